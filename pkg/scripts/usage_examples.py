"""Print the small matching and rewriting examples, including the TRMM set."""
from pathlib import Path

from termmatch import (
    Pattern,
    Registry,
    Signature,
    format_substitution,
    match,
    parse_constraint,
    parse_pattern_file,
    parse_signature_file,
    parse_term,
    replace_all,
)
from termmatch.cli import parse_rules

DATA = Path(__file__).resolve().parent.parent / "data"


def show(subject, pattern):
    print(f"{subject}  vs  {pattern}")
    for subst in match(subject, pattern):
        print("   ", format_substitution(subst))


def main():
    reg = Registry()
    reg.add_signature(Signature("list"))
    reg.add_signature(Signature("MyOp", associative=True, commutative=True))
    t = lambda s: parse_term(s, reg)

    show(t("list(0, 1)"), Pattern(t("list(x_, 1)")))
    show(t("list(1, 2, 3)"), Pattern(t("list(x_, y___)")))
    show(t("MyOp(0, 1, 2)"), Pattern(t("MyOp(x_, 2)")))
    show(t("MyOp(1, 2)"), Pattern(t("MyOp(x_, z_)")))
    show(t("MyOp(1, 2, 3, 1)"), Pattern(t("MyOp(x__, y___)"), parse_constraint("sum(x) == 5")))

    rules = parse_rules((DATA / "bubble.rules").read_text(), reg)
    print("bubble sort:", replace_all(t("list(1, 4, 3, 2)"), rules))

    linalg = parse_signature_file((DATA / "linalg.sig").read_text())
    trmm = parse_pattern_file((DATA / "trmm.patterns").read_text(), linalg)
    subject = parse_term("Times(Transpose(M3), M1, M3, M2)", linalg)
    print(f"TRMM matches in {subject}:")
    for i, pattern in enumerate(trmm):
        for subst in match(subject, pattern):
            print(f"    {i} with {format_substitution(subst)}")


if __name__ == "__main__":
    main()
