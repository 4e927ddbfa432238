import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from models.errors import UsageError
from services.export import write_artifact

FORMATS = ("text", "csv", "json")


@dataclass
class Page:
    """What a command produced. ok=False means a validated check failed (exit 1)."""
    text: str
    csv: Optional[str] = None
    json: Optional[str] = None
    ok: bool = True


def _output_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=FORMATS, help="artifact format (check-* default to json)")
    parent.add_argument("--out", help="write the artifact here instead of stdout")
    parent.add_argument("--seed", type=int, help="seed for randomized sampling")
    parent.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    return parent


def _function_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--fn", help='expression in x, e.g. "x^2*sin(1/x)"')
    parent.add_argument("--catalog", help="catalog function name, e.g. fpq")
    parent.add_argument("--params", nargs="*", default=[], help="catalog parameters (rationals)")
    parent.add_argument("--interval", nargs=2, metavar=("LO", "HI"))
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="realfn", description="Certificates and probes for real functions of one variable.")
    sub = parser.add_subparsers(dest="command", required=True)
    out, fn = _output_flags(), _function_flags()

    def command(name, help_text, with_fn=True):
        parents = [out, fn] if with_fn else [out]
        return sub.add_parser(name, parents=parents, help=help_text)

    rules = ("left_first", "max_delta")

    p = command("witness", "bisection witness for f(a) != f(b)")
    p.add_argument("--levels", type=int, default=40)
    p.add_argument("--rule", choices=rules, default="left_first")

    p = command("lagrange", "signed bisection witness")
    p.add_argument("--want", choices=("Positive", "Negative"), default="Positive")
    p.add_argument("--levels", type=int, default=40)
    p.add_argument("--rule", choices=rules, default="left_first")

    p = command("refute-iaf", "counter-certificate to sup|f'| <= k")
    p.add_argument("--k", required=True)
    p.add_argument("--levels", type=int, default=40)
    p.add_argument("--rule", choices=rules, default="left_first")

    p = command("chain", "epsilon-chain certificate for f(b)-f(a) <= (M+eps)(b-a)")
    p.add_argument("--M", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--min-step", dest="min_step", default="1e-9")
    p.add_argument("--absolute", action="store_true", help="bound |slope| instead of slope")

    for name, help_text in (("rolle", "interior point with f'(c) = 0"), ("mvt", "mean-value point")):
        p = command(name, help_text)
        p.add_argument("--grid", type=int, default=1001)
        p.add_argument("--refine", type=int, default=60)

    p = command("darboux", "point with f'(c) = v")
    p.add_argument("--v", required=True)
    p.add_argument("--bisect-levels", dest="bisect_levels", type=int, default=200)
    p.add_argument("--method", choices=("slope", "extremum"), default="slope")
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--refine", type=int, default=60)

    p = command("slope", "chord slope, two-sided slope limit, or the x^2 sin(1/x) table")
    p.add_argument("--points", nargs=2, metavar=("X", "Y"))
    p.add_argument("--at")
    p.add_argument("--h0", default="0.5")
    p.add_argument("--levels", type=int, default=10)
    p.add_argument("--counterexample", type=int, metavar="N")

    p = command("strict-probe", "strict differentiability probe")
    p.add_argument("--at", required=True)
    p.add_argument("--h0", default="0.1")
    p.add_argument("--levels", type=int, default=8)
    p.add_argument("--samples", type=int, default=64)

    p = command("check-iaf", "|f(b)-f(a)| <= k(b-a)")
    p.add_argument("--k", required=True)

    p = command("check-iafp", "m(b-a) <= f(b)-f(a) <= M(b-a)")
    p.add_argument("--m", required=True)
    p.add_argument("--M", required=True)

    p = command("check-iafg", "|f(b)-f(a)| <= g(b)-g(a)")
    p.add_argument("--g-fn", dest="g_fn")
    p.add_argument("--g-catalog", dest="g_catalog")
    p.add_argument("--g-params", dest="g_params", nargs="*", default=[])

    p = command("check-maja", "f(b)-f(a) <= M(b-a)")
    p.add_argument("--M", required=True)

    p = command("staircase", "sample the devil's staircase", with_fn=False)
    p.add_argument("--tol", default="1e-6")
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--level", type=int, help="sample f_n instead of the limit")

    p = command("cantor-intervals", "the 2^n intervals of level n", with_fn=False)
    p.add_argument("--level", type=int, required=True)

    p = command("polyop", "derivative operator on R_n[x]", with_fn=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", nargs="*", help="coefficients of p, constant first")

    p = command("graph", "implication graph queries", with_fn=False)
    p.add_argument("--implies", nargs=2, metavar=("FROM", "TO"))
    p.add_argument("--dot", action="store_true", help="emit the graph in DOT format")

    return parser


def resolve_out(path: str, output_dir: str) -> str:
    """Bare file names go under the configured output directory."""
    if os.path.dirname(path):
        return path
    return os.path.join(output_dir, path)


def frame(config, content_func) -> int:
    """
    Standard command shell: run the page, pick the artifact for the chosen
    format, deliver it, and turn the outcome into an exit status.
    """
    page = content_func(config)
    artifact = getattr(page, config.fmt)
    if artifact is None:
        raise UsageError(f"{config.command} has no {config.fmt} output", flag="--format")

    if config.out:
        write_artifact(artifact, resolve_out(config.out, config.settings.output_dir))
    else:
        sys.stdout.write(artifact)
        if not artifact.endswith("\n"):
            sys.stdout.write("\n")
    return 0 if page.ok else 1
