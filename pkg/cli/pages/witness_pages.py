from cli.layout import Page
from models.records import HalvingRule, Orientation
from services import export
from services.witness import (
    darboux_witness, epsilon_chain, fcd_witness, iaf_refute, lagrange_witness, mvt_witness, rolle_witness,
)


def _trace_page(title, trace) -> Page:
    lines = [
        title,
        f"  d = {trace.d}, slope floor d/(b-a) = {trace.slope_floor}",
        f"  c = {trace.c} after {trace.levels} levels ({trace.rule.value}, {trace.stationary.value})",
    ]
    if trace.deriv_c is not None:
        lines.append(f"  f'(c) = {trace.deriv_c}, floor check {'passed' if trace.deriv_check else 'FAILED'}")
    return Page(
        text="\n".join(lines) + "\n",
        csv=export.to_csv(export.trace_frame(trace)),
        json=export.to_json(export.trace_dict(trace)),
    )


def witness(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    trace = fcd_witness(f, iv, config.option("levels"), HalvingRule(config.option("rule")))
    return _trace_page(f"Bisection witness for {f.name} on [{iv.lo}, {iv.hi}]", trace)


def lagrange(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    want = Orientation(config.option("want"))
    trace = lagrange_witness(f, iv, want, config.option("levels"), HalvingRule(config.option("rule")))
    return _trace_page(f"{want.value} Lagrange witness for {f.name} on [{iv.lo}, {iv.hi}]", trace)


def refute_iaf(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    k = config.number("k")
    trace = iaf_refute(f, iv, k, config.option("levels"), HalvingRule(config.option("rule")))
    if trace is None:
        message = f"|f(b)-f(a)| <= {k}(b-a) for {f.name}: no counter-certificate\n"
        return Page(text=message, csv=None, json=export.to_json({"refuted": False, "k": k}), ok=False)
    page = _trace_page(f"Counter-certificate to sup|{f.name}'| <= {k}", trace)
    page.json = export.to_json({"refuted": True, "k": k, "trace": export.trace_dict(trace)})
    return page


def chain(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    result = epsilon_chain(
        f, iv, config.number("M"), config.number("epsilon"), config.number("min_step"),
        absolute=bool(config.option("absolute", False)),
    )
    text = (
        f"Epsilon chain for {f.name} on [{iv.lo}, {iv.hi}]: {len(result.knots)} knots\n"
        f"  f(b)-f(a) = {result.rise} <= ({result.M} + {result.epsilon})(b-a) = {result.certified_rhs}\n"
    )
    return Page(
        text=text,
        csv=export.to_csv(export.chain_frame(result)),
        json=export.to_json(export.chain_dict(result)),
    )


def _point_page(label, f, iv, c, extra=None) -> Page:
    data = {"function": f.name, "lo": iv.lo, "hi": iv.hi, "c": c, **(extra or {})}
    return Page(
        text=f"{label} for {f.name} on [{iv.lo}, {iv.hi}]: c = {c!r}\n",
        csv=f"c\n{c!r}\n",
        json=export.to_json(data),
    )


def rolle(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    c = rolle_witness(f, iv, config.option("grid"), config.option("refine"))
    return _point_page("Rolle point", f, iv, c)


def mvt(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    c = mvt_witness(f, iv, config.option("grid"), config.option("refine"))
    return _point_page("Mean-value point", f, iv, c)


def darboux(config) -> Page:
    f, iv = config.build_fn(), config.get_interval()
    v = config.number("v")
    c = darboux_witness(
        f, iv, v, config.option("bisect_levels"), method=config.option("method"),
        grid=config.option("grid"), refine_levels=config.option("refine"),
    )
    return _point_page(f"Darboux point (v = {v})", f, iv, c, {"v": v})
