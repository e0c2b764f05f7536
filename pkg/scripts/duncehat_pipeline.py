"""End-to-end numbers for the dunce-hat construct, with and without the ninth blow-up."""

from duncehat import construct as cons
from duncehat import delta
from duncehat.cli import obstruction_rows
from duncehat.lattice import chi_tangent
from duncehat.obstruction import bezout_argument


def summarize(X: cons.Construct) -> None:
    dc = cons.dual_complex(X)
    print(f"  dual complex V,E,T = {dc.counts}, dunce hat: {delta.is_isomorphic(dc, delta.dunce_hat())}")
    print(f"  collapse search: {delta.collapse_search(dc)}")
    for e in cons.triple_point_check(X):
        print(f"  triple point formula on C{e.gluing}: {e.degrees} + {e.triple_points} = {e.total}")
    print(f"  chi(T) = {chi_tangent(X.components[0].lattice)}, moduli = {cons.expected_moduli_dim(X)}, "
          f"dim M_O = {cons.singular_locus_genus(X)}, d-semistable = {cons.dsemistable_expected_dim(X)}")
    print(f"  smoothing chi = {cons.smoothing_euler(X)}, h11 = {cons.h11(X)}")


def main() -> None:
    for extra in (True, False):
        print(f"ninth blow-up: {extra}")
        summarize(cons.duncehat_construct(extra))
    print("degeneration cases")
    for row in obstruction_rows():
        print("  " + row)
    for line in bezout_argument(4, 9, 2, 3).trace:
        print("  " + line)


if __name__ == "__main__":
    main()
