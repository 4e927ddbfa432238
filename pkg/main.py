import sys

from cli.layout import build_parser, frame
from cli.pages import algebra_pages, cantor_pages, inequality_pages, slope_pages, witness_pages
from cli.state import RunConfig
from models.errors import AnalysisError, UsageError
from services.settings import configure_logging

# --- ROUTES ---

ROUTES = {
    "witness": witness_pages.witness,
    "lagrange": witness_pages.lagrange,
    "refute-iaf": witness_pages.refute_iaf,
    "chain": witness_pages.chain,
    "rolle": witness_pages.rolle,
    "mvt": witness_pages.mvt,
    "darboux": witness_pages.darboux,
    "slope": slope_pages.slope,
    "strict-probe": slope_pages.strict_probe,
    "check-iaf": inequality_pages.check_iaf,
    "check-iafp": inequality_pages.check_iafp,
    "check-iafg": inequality_pages.check_iafg,
    "check-maja": inequality_pages.check_maja,
    "staircase": cantor_pages.staircase,
    "cantor-intervals": cantor_pages.cantor_intervals,
    "polyop": algebra_pages.polyop_page,
    "graph": algebra_pages.graph,
}


def run(config: RunConfig) -> int:
    """Dispatch one command; 0 success, 1 failed check or analysis error, 2 usage error."""
    try:
        return frame(config, ROUTES[config.command])
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except AnalysisError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed the message; --help exits 0
        return e.code if isinstance(e.code, int) else 2

    try:
        config = RunConfig.from_args(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
