"""Smoke test for the skewsep_py extension module.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/skewsep_py-*.whl
"""

import skewsep_py as s


def main():
    z6 = s.Ring("Zmod(6)")
    assert z6.size == 6 and z6.characteristic == 6
    assert z6.mul("2", "3") == "0"
    assert z6.is_unit("5") and not z6.is_non_zero_divisor("2")

    # group ring Z/n[C_2] = Z/n[X]/(X^2 - 1)
    r3 = s.classify_poly("Zmod(3)", "X^2 - 1")
    assert (r3.separable, r3.weakly_separable, r3.weakly_quasi_separable) == (True, True, True)
    r2 = s.classify_poly("Zmod(2)", "X^2 - 1")
    assert r2.weakly_separable is False and r2.agreement

    ctx = s.Context("GF(2,2)", auto="frobenius")
    assert ctx.kind == "automorphism"
    f = ctx.poly("X^2 - 1")
    assert f.is_invariant() and f.degree == 2
    rep = f.classify()
    assert rep.separable and rep.to_dict()["invariant"]
    assert not ctx.poly("X^2 + X").is_invariant()

    z5 = s.Context("Zmod(5)")
    g = z5.poly("X^2 + 1")
    assert g.discriminant() == "1"  # -4 = 1 mod 5
    x = z5.poly("X")
    q, rem = (x * g + x).left_divmod(g)
    assert str(q) == "X" and str(rem) == "X"

    reports = s.Context("Zmod(2)").survey(2, 2)
    assert [r.poly for r in reports] == ["X^2", "X^2 + 1", "X^2 + X", "X^2 + X + 1"]

    results = s.Context("Zmod(4)").verify("T2.4,P1.2", 2, 3)
    assert [r["theorem"] for r in results] == ["T2.4", "P1.2"]
    assert all(r["clean"] for r in results)

    try:
        s.Context("TruncPoly(Zmod(2),3)", deriv="ddt")
    except ValueError as e:
        assert "Leibniz" in str(e)
    else:
        raise AssertionError("d/dt on TruncPoly(Z/2,3) must be rejected")

    print("smoke test ok:", rep)


if __name__ == "__main__":
    main()
