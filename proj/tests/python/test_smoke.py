"""Smoke checks of the python bindings against known values."""

import math

import ramsa


def test_catalogue():
    names = ramsa.list_problems()
    assert len(names) == 6
    vsi = ramsa.builtin_problem("VSI")
    assert vsi.design_dim == 7
    assert vsi.constraint_count == 10
    assert vsi.box.lower[0] == 0.5
    try:
        ramsa.builtin_problem("NOPE")
    except ramsa.RamsaError:
        pass
    else:
        raise AssertionError("lookup error expected")


def test_transforms():
    assert abs(ramsa.output_transform(1.0) - math.pi / 4) < 1e-12
    box = ramsa.builtin_problem("SCD").box
    x = ramsa.scale_to_box([0.5, 0.5, 0.5], box)
    assert x == [300.0, 20.0, 300.0]
    assert ramsa.unit_coordinates(x, box) == [0.5, 0.5, 0.5]


def test_cvar_oracles():
    values = [float(i) for i in range(1, 11)]
    assert ramsa.mc_var(values, 0.5) == 5.0
    assert abs(ramsa.mc_cvar(values, 0.8) - 9.5) < 1e-12


def test_solver_determinism():
    p = ramsa.builtin_problem("SCD")
    a = ramsa.solve(p, budget=2000, seed=11)
    b = ramsa.solve(p, budget=2000, seed=11)
    assert a.x_unit == b.x_unit
    assert a.status == "complete"
    assert a.budget_used == 2000
    assert all(0.0 <= v <= 1.0 for v in a.x_unit)


def test_feasibility_and_trial():
    p = ramsa.builtin_problem("SCD")
    point = ramsa.sora_reference_point("SCD")
    report = ramsa.mc_feasibility(p, ramsa.unit_coordinates(point, p.box),
                                  n_samples=20000, seed=3)
    assert report.success
    assert abs(report.mean_objective - 3989.0) < 25.0

    trial = ramsa.trial(p, runs=4, budget=1500, mc_samples=1000, seed=5,
                        jobs=2)
    assert len(trial.runs) == 4
    assert trial.success_count >= 0
    assert len(trial.mean_point) == 3


def test_tuning():
    p = ramsa.builtin_problem("SCD")
    report = ramsa.tune(p, samples=500, kernel="gaussian", seed=2)
    assert len(report.grid) == 6
    assert report.chosen_beta1 in (g / 2 for g in report.grid)
    assert report.chosen_s2 > 0


def test_epistemic():
    p = ramsa.builtin_problem("VSI-epistemic-interval")
    x = ramsa.sora_reference_point("VSI")
    out = ramsa.worst_case_epistemic(p, ramsa.unit_coordinates(x, p.box),
                                     resolution=7, mc_samples=4000, seed=9)
    assert len(out["per_constraint"]) == 10
    assert out["feasible"] in (True, False)


def main():
    checks = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for check in checks:
        check()
        print(f"ok {check.__name__}")
    print(f"{len(checks)} python smoke checks passed")


if __name__ == "__main__":
    main()
