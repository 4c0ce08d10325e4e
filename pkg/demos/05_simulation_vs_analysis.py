"""Cross-check the analytical model against the slot-level simulator.

The decoupled mode redraws LOS states per reception, matching the
independence convention of the analysis exactly in expectation; the
physical mode shares one LOS draw per link per slot, measuring how much
that convention actually distorts the numbers.
"""

from mmrelay import ScenarioConfig, aggregate_throughput, compare, run

cfg = ScenarioConfig(n_ues=5, q_u=0.5, q_uf=0.5, q_ur=0.5, q_r=0.9)
report = aggregate_throughput(cfg)
print(f"scenario: N = 5, q_u = 0.5, q_r = 0.9 -> regime {report.regime}, "
      f"q_r_min = {report.queue.q_r_min:.4f}")

stats = run(cfg, 400_000, seed=2024, mode="decoupled")
print(f"\ndecoupled mode, {stats.slots} slots "
      f"({stats.n_batches} batches of {stats.measured_slots // stats.n_batches})")
print(f"{'metric':<10} {'analytic':>12} {'empirical':>12} {'z':>7}")
for row in compare(report, stats).rows:
    print(f"{row.name:<10} {row.analytic:>12.5f} {row.empirical:>12.5f} "
          f"{row.z:>7.2f}")

phys = run(cfg, 400_000, seed=2024, mode="physical")
print("\nphysical mode with the same transmission pattern (sensitivity of")
print("the decoupling convention, reported as a difference, not a failure):")
print(f"  t_sim     decoupled {stats.t_sim:.5f}  physical {phys.t_sim:.5f}")
print(f"  lambda    decoupled {stats.lambda_sim:.5f}  physical {phys.lambda_sim:.5f}")
print(f"  P(Q=0)    decoupled {stats.p_empty_sim:.5f}  physical {phys.p_empty_sim:.5f}")

print(f"\nqueue trace: mean {stats.mean_queue:.2f}, max {stats.max_queue}, "
      f"final {stats.queue_final}")
print(f"packet conservation: enqueued {stats.enqueued_total} = "
      f"departed {stats.departed_total} + final {stats.queue_final}")
