from cli.layout import Page
from services import export
from services.cantor import kn_intervals, level_grid, staircase_grid


def staircase(config) -> Page:
    level = config.option("level")
    grid = config.option("grid")
    if level is not None:
        rows = level_grid(level, grid)
        title = f"f_{level} on {grid} points"
    else:
        tol = float(config.real(config.option("tol"), "--tol"))
        rows = staircase_grid(tol, grid)
        title = f"Devil's staircase on {grid} points (tol {tol})"
    df = export.staircase_frame(rows)
    return Page(
        text=title + "\n" + df.to_string(index=False) + "\n",
        csv=export.to_csv(df),
        json=export.to_json({"rows": [list(r) for r in rows]}),
    )


def cantor_intervals(config) -> Page:
    level = kn_intervals(config.option("level"))
    df = export.intervals_frame(level)
    text = f"K_{level.n}: {len(level.intervals)} intervals of width 3^-{level.n}\n" + df.to_string(index=False) + "\n"
    return Page(text=text, csv=export.to_csv(df), json=export.to_json(level))
