from mcfrac.validate import CHECKS, biorthogonality_errors, run_checks


def test_all_checks_pass():
    results = run_checks()
    failed = [(r.name, r.value, r.tolerance) for r in results if not r.passed]
    assert not failed
    assert len({r.name for r in results}) == len(results)


def test_filter_normalisation():
    a = {r.name for r in run_checks("Dunford-Taylor")}
    assert a and all(n.startswith("dunford_taylor") for n in a)
    assert run_checks("no-such-group") == []
    assert list(CHECKS)[0] == "biorthogonality"


def test_biorthogonality_sensitivity():
    em, es = biorthogonality_errors(N=32)
    assert em < 1e-12 and es < 1e-10
    _, es_bad = biorthogonality_errors(N=32, perturb=1e-3)
    assert es_bad > 1e-5


def test_result_serialisation():
    r = run_checks("special")[0]
    d = r.as_dict()
    assert set(d) == {"check", "passed", "value", "tolerance", "detail"}
