"""Per-check verdicts and timings as a figure."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def report_figure(report, path):
    """Left: pass/fail counts per suite.  Right: time per check, slowest first."""
    summary = report.summary()["by_suite"]
    suites = list(summary)
    passed = [summary[s]["passed"] for s in suites]
    failed = [summary[s]["failed"] for s in suites]
    checks = sorted(report.checks, key=lambda c: -c.elapsed)[:30]

    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(12, max(3.5, 0.22 * len(checks) + 1)),
                                   gridspec_kw={"width_ratios": [1, 2]})
    ys = range(len(suites))
    ax0.barh(ys, passed, color="#4c9a6a", label="pass")
    ax0.barh(ys, failed, left=passed, color="#c44e52", label="fail")
    ax0.set_yticks(list(ys), suites)
    ax0.invert_yaxis()
    ax0.set_xlabel("checks")
    ax0.legend(frameon=False, loc="lower right")

    ys = range(len(checks))
    ax1.barh(ys, [c.elapsed for c in checks],
             color=["#4c9a6a" if c.verdict else "#c44e52" for c in checks])
    ax1.set_yticks(list(ys), [c.name for c in checks], fontsize=6)
    ax1.invert_yaxis()
    ax1.set_xlabel("seconds")
    ax1.set_title("slowest checks", fontsize=9)
    for ax in (ax0, ax1):
        ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
