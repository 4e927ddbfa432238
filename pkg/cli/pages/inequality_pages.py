from cli.layout import Page
from models.errors import UsageError
from services import export
from services.inequalities import check_iaf as run_iaf
from services.inequalities import check_iafg as run_iafg
from services.inequalities import check_iafprime, check_maja as run_maja


def _report_page(f, iv, report) -> Page:
    status = "holds" if report.holds else "FAILS"
    text = f"{report.prop} for {f.name} on [{iv.lo}, {iv.hi}] {status}: {report.lhs} <= {report.rhs} (margin {report.margin})\n"
    if report.side:
        text += f"  tighter side: {report.side}\n"
    csv = None
    if report.counter_witness is not None:
        text += f"  counter-witness: c = {report.counter_witness.c}, every |slope| >= {report.counter_witness.slope_floor}\n"
        csv = export.to_csv(export.trace_frame(report.counter_witness))
    return Page(text=text, csv=csv, json=export.to_json(export.report_dict(report)), ok=report.holds)


def check_iaf(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    return _report_page(f, iv, run_iaf(f, iv, config.number("k")))


def check_iafp(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    return _report_page(f, iv, check_iafprime(f, iv, config.number("m"), config.number("M")))


def check_iafg(config) -> Page:
    g_fn, g_catalog = config.option("g_fn"), config.option("g_catalog")
    if bool(g_fn) == bool(g_catalog):
        raise UsageError("give exactly one of --g-fn or --g-catalog", flag="--g-fn")
    f, iv = config.build_fn(), config.get_interval()
    g = config.build_fn(fn_text=g_fn or "", catalog=g_catalog or "", params=config.option("g_params", []))
    return _report_page(f, iv, run_iafg(f, g, iv))


def check_maja(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    return _report_page(f, iv, run_maja(f, iv, config.number("M")))
