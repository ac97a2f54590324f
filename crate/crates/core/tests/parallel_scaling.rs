//! Parallel speedup guard for the bootstrap higher-criticism workload: the
//! work must actually spread across cores instead of serializing on shared
//! state. On an 8-core (or larger) machine the multi-thread wall time must
//! be at most 0.35x the single-thread time; on smaller machines the bound
//! adapts to the achievable speedup of the available cores.

use hct_core::dist::{sample_signal_matrix, DistKind, DistSpec, Hypothesis};
use hct_core::harness::runners::{oracle_table, run_hc_cell};
use hct_core::hc::alpha_grid;
use hct_core::phase::make_signal_config_with_p;
use hct_core::prng::StreamKey;
use std::time::Instant;

#[test]
fn hc_workload_scales_with_threads() {
    let dist = DistSpec::standardized(DistKind::FisherF { d1: 5, d2: 5 });
    let scenario = make_signal_config_with_p(30, 300, 0.5, 0.75, 0.375).unwrap();
    let grid = alpha_grid(300, 0.3, 15).unwrap();
    let b = 2000;
    let key = StreamKey::new(42);
    let table = oracle_table(&dist, 30, &grid, 50_000, &key.child(0)).unwrap();

    // Warm up page cache / allocator before timing.
    let mut g = key.child(9).generator();
    sample_signal_matrix(&scenario, &dist, Hypothesis::H0, &mut g).unwrap();

    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        // Two passes, fastest wins: absorbs first-touch and scheduler noise.
        let mut best = f64::INFINITY;
        for _ in 0..2 {
            let start = Instant::now();
            let cell = pool
                .install(|| {
                    run_hc_cell(
                        &dist,
                        &scenario,
                        Hypothesis::H0,
                        &grid,
                        b,
                        32,
                        &table,
                        &key.child(1),
                    )
                })
                .unwrap();
            assert_eq!(cell.boot.len(), 32);
            best = best.min(start.elapsed().as_secs_f64());
        }
        best
    };

    let cores = std::thread::available_parallelism().map(|c| c.get()).unwrap_or(1);
    if cores < 2 {
        eprintln!("single core: speedup guard not applicable");
        return;
    }
    let threads = cores.min(8);
    let t1 = run(1);
    let tn = run(threads);
    let ratio = tn / t1;
    // On few-core boxes single-thread turbo and hypervisor steal blur the
    // ideal 1/threads; the bound still cleanly separates genuine speedup
    // from a serialized implementation (ratio ~1).
    let bound = if threads >= 8 { 0.35 } else { 0.35 + 0.9 / threads as f64 };
    assert!(
        ratio <= bound,
        "wall time ratio {ratio:.3} at {threads} threads exceeds {bound:.3} (t1={t1:.2}s tn={tn:.2}s)"
    );
    eprintln!("speedup {:.2}x at {threads} threads (ratio {ratio:.3})", 1.0 / ratio);
}
