"""Cohomological totals, multiplicity tables and inequality slack for the bundled
structure-equation fixtures."""
import argparse
from dataclasses import dataclass, field
from pathlib import Path

from dblcomplex.audits import ddbar_audit, inequality_audit
from dblcomplex.ce import invariant_bicomplex, parse_cdga
from dblcomplex.cohomology import cohomology_report
from dblcomplex.zigzag import multiplicities

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    fixtures: list = field(default_factory=lambda: ["torus1", "torus2", "torus3", "kodaira_thurston", "iwasawa"])
    show_tables: bool = False


def run(cfg: Config) -> None:
    keys = ("b", "h_delbar", "h_kerdc", "h_bc", "e_1")
    print(f"{'fixture':<18}" + "".join(f"{k:>10}" for k in keys) + f"{'ddbar':>8}  equalities")
    for name in cfg.fixtures:
        A = invariant_bicomplex(parse_cdga((ROOT / "fixtures" / f"{name}.cdga").read_text()))
        rep = cohomology_report(A)
        t = rep.totals
        ineq = inequality_audit(rep)
        dd = ddbar_audit(A).holds
        print(f"{name:<18}" + "".join(f"{t[k]:>10}" for k in keys) + f"{str(dd):>8}  {', '.join(ineq.equalities)}")
        if cfg.show_tables:
            print(multiplicities(A).to_text())


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tables", action="store_true", help="also print the multiplicity tables")
    args = ap.parse_args()
    run(Config(show_tables=args.tables))
