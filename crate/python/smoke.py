"""Smoke test for the radialgps extension module."""

import math

import radialgps as rg


def main():
    hydrogen = rg.Potential("coulomb Z=1 g=0 lambda=0")
    spectrum = rg.solve(hydrogen, l=0, states=3)
    spectrum.verify()
    for n, e in enumerate(spectrum.energies, start=1):
        assert abs(e + 0.5 / n**2) < 1e-10, (n, e)

    ground = spectrum[0]
    assert ground.n_r == 0 and ground.physical
    assert abs(ground.norm() - 1.0) < 1e-12
    assert abs(ground.expectation(1) - 1.5) < 1e-10
    assert abs(ground.expectation(-1) - 1.0) < 1e-10
    r, density = zip(*ground.density())
    assert len(r) == rg.GridSpec().order + 1

    sextic = rg.Potential.oscillator(0.5, -5.625, 1.7578125)
    assert abs(rg.solve(sextic, states=1).energies[0] + 1.0) < 1e-10
    assert abs(sextic(2.0) - (2.0 - 5.625 / 16 + 1.7578125 / 64)) < 1e-14
    assert sextic.effective(1.0, l=1) == sextic(1.0) + 1.0

    grid = rg.GridSpec(200, 200.0, 0.1)
    assert math.isclose(grid.length_scale, 10.0)
    coarse = rg.solve(hydrogen, states=2, grid=grid)
    assert abs(coarse.energies[0] + 0.5) < 1e-9

    assert rg.truncate(-0.29608776768999, 11) == "-0.29608776768"

    for row in rg.validate(hydrogen, states=3):
        index, gps, numerov, delta, flagged = row
        assert not flagged, row

    report = rg.table(5)
    assert report["passed"], report["checks"]

    for bad in ("oscillator a=0.5 b=1", "nonsense"):
        try:
            rg.Potential(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(bad)

    print("radialgps smoke test: OK")


if __name__ == "__main__":
    main()
