"""Smoke test for the spa_py extension. Run with pytest or directly."""

import spa_py


def test_products_and_groebner():
    a = spa_py.Algebra("uq+ 2")
    assert a.generators == ["x[1,2]", "x[1,3]", "x[2,3]"]
    assert a.is_solvable()
    assert a.pbw_consistent()
    # x23 x12 is out of PBW order; the product rewrites it
    assert a.multiply("x[2,3]", "x[1,2]") == "q^2*x[1,2]*x[2,3] - q*x[1,3]"
    assert a.groebner(["x[1,2]"]) == ["x[1,2]"]
    assert a.groebner(["x[1,2]"], side="two") == ["x[1,3]", "x[1,2]"]
    assert a.normal_form("x[1,2]*x[2,3]", ["x[1,2]"]) == "q^-1*x[1,3]"
    assert a.contains("q^2*x[1,2]*x[2,3] - q*x[1,3]", ["x[1,2]"])


def test_dimensions():
    a = spa_py.Algebra("uq+ 2", q="2")
    assert a.gk_dimension(["x[1,2]"]) == 2
    assert a.gk_dimension(["x[1,2]"], side="two") == 1
    assert a.hilbert(["x[1,2]"], 3) == [1, 2, 3, 4]
    kept, exact = a.eliminate(["x[1,2]"], "x[1,3]", side="two")
    assert kept == ["x[1,3]"] and exact
    assert a.elimination_lemma_failures(["x[1,2]"], side="two") == []


def test_cli_and_errors():
    code, out, _ = spa_py.run(["check-solvable", "--algebra", "uq+ 3"])
    assert code == 0 and out
    code, _, err = spa_py.run(["gb", "--algebra", "nonsense 2"])
    assert code == 2 and "error" in err
    try:
        spa_py.Algebra("uq+ 2").groebner(["x[9,9]"])
    except ValueError:
        pass
    else:
        raise AssertionError("bad generator accepted")


if __name__ == "__main__":
    test_products_and_groebner()
    test_dimensions()
    test_cli_and_errors()
    print("smoke test ok")
