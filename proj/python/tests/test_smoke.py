"""End-to-end smoke checks of the python bindings.

Runnable both as a plain script (used by ctest) and under pytest.
"""

import json
import sys

import nilpencil


def test_classify_three_simple_roots():
    inv = {
        "real_divisors": [
            {"root": "0", "power": 1},
            {"root": "1", "power": 1},
            {"root": "2", "power": 1},
        ],
        "complex_divisors": [],
        "minimal_indices": [],
        "common_kernel_dim": 0,
    }
    verdict = json.loads(nilpencil.classify(json.dumps(inv)))
    assert verdict["is_einstein"] is True
    assert verdict["case"] == "Generic"


def test_invariants_round_trip():
    spec = {
        "real_divisors": [{"root": "0", "power": 1}, {"root": "-1", "power": 2}],
        "complex_divisors": [{"mu": "1", "nu": "2", "power": 1}],
        "minimal_indices": [1],
        "common_kernel_dim": 0,
    }
    pencil = nilpencil.synthesize(json.dumps(spec))
    inv = json.loads(nilpencil.invariants(pencil))
    assert sorted(d["root"] for d in inv["real_divisors"]) == ["-1", "0"]
    assert inv["complex_divisors"] == [{"mu": "1", "nu": "2", "power": 1}]
    assert inv["minimal_indices"] == [1]


def test_heisenberg_identity_metric_is_a_soliton():
    algebra = {"J": [[["0", "1"], ["-1", "0"]]]}
    metric = {"diag": ["1", "1", "1"]}
    fit = json.loads(nilpencil.verify(json.dumps(algebra), json.dumps(metric)))
    assert fit["C_exact"] == "-3/2"
    assert fit["residual"] == 0


def test_generic_metric_certifies():
    inv = {
        "real_divisors": [
            {"root": "0", "power": 1},
            {"root": "1", "power": 1},
            {"root": "-1", "power": 1},
        ],
        "complex_divisors": [],
        "minimal_indices": [],
        "common_kernel_dim": 0,
    }
    cert = json.loads(nilpencil.generic_metric(json.dumps(inv)))
    assert cert["ricci_residual"] <= 1e-8
    assert cert["derivation_residual"] <= 1e-8
    assert cert["eigenvalue_type"]["lambdas"] == [1, 2]
    assert cert["eigenvalue_type"]["dims"] == [6, 2]


def test_exact_mode_refuses_irrational_roots():
    pencil = {
        "J1": [
            ["0", "1", "0", "0"],
            ["-1", "0", "0", "0"],
            ["0", "0", "0", "1"],
            ["0", "0", "-1", "0"],
        ],
        "J2": [
            ["0", "0", "0", "2"],
            ["0", "0", "1", "0"],
            ["0", "-1", "0", "0"],
            ["-2", "0", "0", "0"],
        ],
    }
    try:
        nilpencil.invariants(json.dumps(pencil))
    except NotImplementedError:
        pass
    else:
        raise AssertionError("exact mode accepted an irrational divisor")
    inv = json.loads(nilpencil.invariants(json.dumps(pencil), mode="numeric"))
    assert len(inv["complex_divisors"]) + len(inv["real_divisors"]) > 0


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"{t.__name__}: ok")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
