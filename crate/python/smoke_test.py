"""Smoke test for the qhahn_py extension module."""

import qhahn_py as qh


def main():
    names = [name for name, _, _ in qh.catalog()]
    assert "discrete-q-hermite" in names, names

    t = qh.ParamSet(4, 1, [-1, 2, -2], 1).table(14)
    assert t.alpha == ["1"] * 14, t.alpha
    assert t.t == "-9/4", t.t
    assert t.degrees == ("0", "0")
    assert t.residual(8) == []
    assert t.verify(8)["passed"]
    assert t.polys(2)[2] == ["-1", "-1", "1"]

    cube = qh.ParamSet.preset("y1-cube-zero", 2, adjoin="-7").table(14)
    assert cube.sigma0_sq == "-7"
    assert cube.sigma[1] == "6/5*rt", cube.sigma
    assert cube.alpha[1] == "72/775"
    assert cube.verify(8)["hahn"] is True

    herm = qh.ParamSet.preset("discrete-q-hermite", 2).table(4)
    assert herm.alpha[:3] == ["1", "6", "28"], herm.alpha

    aw = qh.ParamSet.askey_wilson(1, 2, 3, 4, 2, 1, adjoin="auto")
    assert aw.y == "6" and aw.d == ["3", "6", "4"]
    assert aw.degrees() == ("8", "8")

    try:
        qh.ParamSet(2, 0, [1, 3, "-6/5"], 1).table(4)
    except ValueError as e:
        assert "V(1)=0" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("qhahn_py smoke test: ok")


if __name__ == "__main__":
    main()
