#!/usr/bin/env python3
"""The stability experiment: certified bounds sandwich the analytic rank.

For sampled tensors T over GF(q), the analytic rank over the extension
GF(q^n) is pinned between (Q^/n) AR(T) and (R^/n) AR(T), where Q^ and R^
are subrank/rank bounds carried by machine-checked certificates.  Both
inequalities are checked exactly on the integer counts.
"""

from tensorcert import stability_experiment

for q, n in ((2, 2), (2, 3), (2, 4), (3, 2)):
    report = stability_experiment(q=q, n=n, d=3, dims=(2, 2, 2), samples=20, seed=7)
    worst_lower = min(row["lower_margin"] for row in report.rows)
    worst_upper = min(row["upper_margin"] for row in report.rows)
    print(
        f"q={q} n={n}: R^ = {report.r_hat} ({report.r_route}), Q^ = {report.q_hat}, "
        f"all {len(report.rows)} samples hold: {report.all_hold}, "
        f"worst margins {worst_lower:.4f} / {worst_upper:.4f}"
    )

print("\ncertificates are referenced by content hash in the reports, e.g.")
report = stability_experiment(q=2, n=2, d=3, dims=(2, 2, 2), samples=1, seed=7)
print("  rank certificate:", report.r_cert_id)
print("  subrank certificate:", report.q_cert_id)
