"""Report output: JSON, a delimited summary, a plain-text table, and an
optional matplotlib rendering of the check grid."""

from __future__ import annotations

import json

STATUS_ORDER = ("pass", "fail", "error", "observational-true", "observational-false")


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def strip_timings(report: dict) -> dict:
    """Copy with wall_time fields removed, for byte-stable comparison."""
    clone = json.loads(json.dumps(report))
    for entry in clone.get("checks", {}).values():
        entry.pop("wall_time", None)
    return clone


def to_text(report: dict) -> str:
    lines = []
    alg = report["algebra"]
    lines.append(
        f"{report['tool']['name']} {report['tool']['version']}  "
        f"algebra={alg['label']} ring={alg['ring']} rank={alg['rank']} "
        f"fingerprint={alg['fingerprint']}"
    )
    width = max((len(name) for name in report["checks"]), default=10)
    for name, entry in report["checks"].items():
        mark = {
            "pass": "ok",
            "fail": "FAIL",
            "error": "ERROR",
            "observational-true": "obs:true",
            "observational-false": "obs:false",
        }[entry["status"]]
        dim = entry["dimensions"]["dim"]
        lines.append(f"  {name:<{width}}  {mark:<9}  dim={dim:<8} {entry['wall_time']:.3f}s")
        if entry.get("message"):
            lines.append(f"    {entry['message']}")
    s = report["summary"]
    lines.append(
        f"summary: {s['passed']} passed, {s['failed']} failed, "
        f"{s['errors']} errors, {s['observational']} observational"
    )
    return "\n".join(lines) + "\n"


def to_tsv(report: dict) -> str:
    rows = ["check\tstatus\tdim\twall_time"]
    for name, entry in report["checks"].items():
        rows.append(
            f"{name}\t{entry['status']}\t{entry['dimensions']['dim']}\t{entry['wall_time']}"
        )
    return "\n".join(rows) + "\n"


def render_figure(report: dict, path: str):
    """Check grid colored by status plus per-check wall time, saved to a file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = list(report["checks"])
    statuses = [report["checks"][n]["status"] for n in names]
    times = [report["checks"][n]["wall_time"] for n in names]
    colors = {
        "pass": "#2a9d3a",
        "fail": "#c8351f",
        "error": "#e8a13c",
        "observational-true": "#4a7fb5",
        "observational-false": "#9a8cc4",
    }
    height = max(3.0, 0.24 * len(names))
    fig, (ax_status, ax_time) = plt.subplots(
        1, 2, figsize=(9, height), sharey=True, gridspec_kw={"width_ratios": [1, 3]}
    )
    ypos = range(len(names))
    ax_status.barh(ypos, [1] * len(names), color=[colors[s] for s in statuses])
    ax_status.set_xlim(0, 1)
    ax_status.set_xticks([])
    ax_status.set_yticks(list(ypos))
    ax_status.set_yticklabels(names, fontsize=7)
    ax_status.invert_yaxis()
    ax_status.set_title("status", fontsize=9)
    ax_time.barh(ypos, times, color="#666666")
    ax_time.set_xlabel("wall time (s)", fontsize=8)
    ax_time.set_title(report["algebra"]["label"], fontsize=9)
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in colors.values()]
    ax_time.legend(handles, list(colors), fontsize=6, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
