"""Which single-count perturbations of the curve and surface model tables escape
the universal relations, and whether blow-ups realize the escaped tables."""
import argparse
from dataclasses import dataclass

from dblcomplex.audits import curve_model_table, relations_audit, single_count_mutations, surface_model_table
from dblcomplex.bicomplex import blowup_model, make_zigzag
from dblcomplex.shapes import ZigzagShape
from dblcomplex.zigzag import multiplicities, reassemble


@dataclass
class Config:
    genera: tuple = (0, 1, 2, 3)
    surfaces: tuple = ((0, 1, 0), (1, 0, 0), (3, 2, 2), (4, 3, 3), (0, 3, 19))


def run(cfg: Config) -> None:
    cases = [(f"curve g={g}", curve_model_table(g), 1) for g in cfg.genera]
    cases += [(f"surface b1,b2+,b2-={b}", surface_model_table(*b), 2) for b in cfg.surfaces]
    point = make_zigzag(ZigzagShape.dot(0, 0))
    for name, T, n in cases:
        muts = list(single_count_mutations(T, n))
        escaped = [(d, M) for d, M in muts if relations_audit(M, n).ok]
        print(f"{name}: {len(muts)} mutations, {len(escaped)} undetected")
        for desc, M in escaped:
            note = ""
            if n == 2 and M.zig_only() == multiplicities(blowup_model(reassemble(T), point, 2)).zig_only():
                note = "  (table of the blow-up at a point)"
            print(f"    {desc}{note}")


if __name__ == "__main__":
    argparse.ArgumentParser(description=__doc__).parse_args()
    run(Config())
