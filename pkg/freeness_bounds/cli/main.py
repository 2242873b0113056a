# Copyright 2024 freeness-bounds contributors.
# See LICENSE file for licensing details.
import typer

from freeness_bounds.cli.report import bounds, lambertw
from freeness_bounds.cli.solve import solve_f, solve_g, table
from freeness_bounds.cli.verify import verify


def build_app() -> typer.Typer:
    app = typer.Typer(help="Certified computation of F(n, r), G(n) and their closed-form bounds.")
    app.command("table")(table)
    app.command("solve-f")(solve_f)
    app.command("solve-g")(solve_g)
    app.command("bounds")(bounds)
    app.command("verify")(verify)
    app.command("lambertw")(lambertw)
    return app


def main():
    build_app()()


if __name__ == "__main__":
    main()
