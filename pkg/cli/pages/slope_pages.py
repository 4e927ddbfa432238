from cli.layout import Page
from models.errors import UsageError
from models.records import Verdict
from services import export
from services.slope import counterexample_table, slope as chord_slope, strict_deriv_probe, two_sided_slope_limit


def _probe_page(title, report, ok=True) -> Page:
    text = (
        f"{title}\n"
        f"  verdict {report.verdict.value} (heuristic), estimate {report.estimate!r}, dispersion {report.dispersion!r}\n"
    )
    if report.adversarial_pair is not None:
        text += f"  worst pair {report.adversarial_pair} with slope {report.adversarial_slope!r}\n"
    return Page(text=text, json=export.to_json(export.report_dict(report)), ok=ok)


def slope(config) -> Page:
    """One of --counterexample N, --points X Y or --at A (two-sided limit)."""
    n = config.option("counterexample")
    if n is not None:
        rows = counterexample_table(n)
        text = "".join(f"n={r[0]}  x_n={r[1]!r}  y_n={r[2]!r}  P={r[3]!r}\n" for r in rows)
        return Page(
            text=text,
            csv=export.to_csv(export.counterexample_frame(rows)),
            json=export.to_json([dict(zip(export.COUNTEREXAMPLE_COLUMNS, r)) for r in rows]),
        )

    f = config.build_fn()
    points = config.option("points")
    if points is not None:
        x, y = (config.real(p, "--points") for p in points)
        value = chord_slope(f, x, y)
        return Page(
            text=f"P({x}, {y}) = {value} for {f.name}\n",
            csv=f"x,y,slope\n{export.cell(x)},{export.cell(y)},{export.cell(value)}\n",
            json=export.to_json({"x": x, "y": y, "slope": value, "function": f.name}),
        )

    if config.option("at") is None:
        raise UsageError("give --counterexample, --points or --at", flag="--at")
    report = two_sided_slope_limit(f, config.number("at"), config.number("h0"), config.option("levels"))
    return _probe_page(f"Two-sided slope limit of {f.name} at {config.option('at')}", report)


def strict_probe(config) -> Page:
    f = config.build_fn()
    report = strict_deriv_probe(
        f, config.number("at"), config.number("h0"), config.option("levels"),
        config.option("samples"), seed=config.seed,
    )
    title = f"Strict differentiability probe of {f.name} at {config.option('at')}"
    return _probe_page(title, report, ok=report.verdict is not Verdict.NOT_STRICT)
