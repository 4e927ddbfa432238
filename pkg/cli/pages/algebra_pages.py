from fractions import Fraction

from cli.layout import Page
from models.errors import UsageError
from models.records import Poly
from services import export, polyop, theoremgraph


def polyop_page(config) -> Page:
    n = config.option("n")
    matrix = polyop.d_matrix(n)
    rank, nullity = polyop.rank_nullity(n)
    kernel = polyop.kernel_basis(n)
    data = {
        "n": n,
        "matrix": [[export.cell(v) for v in matrix.row(i)] for i in range(n + 1)],
        "rank": rank,
        "kernel_dim": nullity,
        "kernel": [str(p) for p in kernel],
        "top_monomial_in_image": not polyop.image_misses_top(n),
    }
    lines = [f"D on R_{n}[x]: rank {rank}, dim ker {nullity}, rank + nullity = {rank + nullity}",
             f"  ker D spanned by {', '.join(str(p) for p in kernel)}"]

    coeffs = config.option("poly")
    if coeffs:
        try:
            p = Poly([Fraction(c) for c in coeffs])
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(str(e), flag="--poly")
        ok, primitive = polyop.has_primitive(p, n)
        data["poly"] = str(p)
        data["has_primitive"] = ok
        data["primitive"] = str(primitive) if primitive is not None else None
        lines.append(f"  {p}: " + (f"primitive {primitive}" if ok else f"no primitive in R_{n}[x]"))

    return Page(text="\n".join(lines) + "\n", json=export.to_json(data))


def graph(config) -> Page:
    g = theoremgraph.build_graph()
    pair = config.option("implies")
    if config.option("dot"):
        dot = theoremgraph.to_dot(g)
        return Page(text=dot, json=export.to_json({"dot": dot}))

    if pair:
        source, target = (theoremgraph.statement(s) for s in pair)
        result = theoremgraph.implies(source, target, g)
        text = f"{source.value} {'implies' if result else 'does not imply'} {target.value}\n"
        return Page(text=text, json=export.to_json({"from": source, "to": target, "implies": result}))

    classes = theoremgraph.equivalence_classes(g)
    lines = ["Equivalence classes:"]
    lines += ["  {" + ", ".join(s.value for s in c) + "}" for c in classes]
    lines.append("Open questions (absent arcs):")
    lines += [f"  {a.value} -> {b.value}: {note}" for a, b, note in theoremgraph.open_questions()]
    data = {
        "classes": [[s.value for s in c] for c in classes],
        "open_questions": [[a.value, b.value, note] for a, b, note in theoremgraph.open_questions()],
    }
    return Page(text="\n".join(lines) + "\n", json=export.to_json(data))
