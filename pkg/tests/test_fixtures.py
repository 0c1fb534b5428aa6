import pytest

from rankext.algebra.code import code_new
from rankext.algebra.gf import make_field
from rankext.algebra.isometry import map_new
from rankext.algebra.matfq import elementary, identity, multiplicative_order
from rankext.core.errors import InputError, SearchSpaceTooLarge, UnknownFixture, UnsupportedParams
from rankext.services.fixtures import fixture_service, primitive_companion

HEAVY = {"bg-block-4x4", "rank-one-family-n"}
NAMES = [d.name for d in fixture_service.list_examples()]


def test_catalogue():
    assert NAMES[0] == "bg-transpose-2x3"
    assert len(NAMES) == len(set(NAMES)) == 11
    for descriptor in fixture_service.list_examples():
        assert descriptor.summary


@pytest.mark.parametrize("name", [n for n in NAMES if n not in HEAVY])
def test_fixture_passes(name):
    report = fixture_service.run_example(name)
    assert report.passed, report.mismatches
    assert report.mismatches == []


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(HEAVY))
def test_heavy_fixture_passes(name):
    report = fixture_service.run_example(name)
    assert report.passed, report.mismatches


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture_service.run_example("no-such-example")


class TestParameters:
    def test_string_values_are_coerced(self):
        report = fixture_service.run_example("arrow-irreducible", {"m": "4", "n": "5"})
        assert report.parameters == {"m": 4, "n": 5}
        assert report.computed["support"] == 8
        assert report.passed

    def test_unknown_key(self):
        with pytest.raises(UnsupportedParams):
            fixture_service.run_example("path-demo-3x5", {"q": 3})

    def test_not_an_integer(self):
        with pytest.raises(UnsupportedParams):
            fixture_service.run_example("arrow-irreducible", {"m": "three"})

    @pytest.mark.parametrize("params", [{"q": 2}, {"n": 1}, {"q": 4}])
    def test_singer_rejects(self, params):
        with pytest.raises(UnsupportedParams):
            fixture_service.run_example("singer-cycle", params)

    def test_scalar_needs_odd_characteristic(self):
        with pytest.raises(UnsupportedParams):
            fixture_service.run_example("scalar-rank-one-2x4", {"q": 2, "alpha": 1})

    def test_scalar_rejects_alpha_one(self):
        with pytest.raises(UnsupportedParams):
            fixture_service.run_example("scalar-rank-one-2x4", {"alpha": 1})

    def test_arrow_bounds(self):
        with pytest.raises(UnsupportedParams):
            fixture_service.run_example("arrow-irreducible", {"m": 13})


class TestSinger:
    def test_orders(self):
        report = fixture_service.run_example("singer-cycle")
        assert report.computed["order_P"] == 8
        assert report.computed["order_Q"] == 4
        assert report.computed["extendable"] is False

    def test_larger_field(self):
        report = fixture_service.run_example("singer-cycle", {"q": 5, "n": 2})
        assert report.passed, report.mismatches
        assert (report.computed["order_P"], report.computed["order_Q"]) == (24, 6)


class TestPrimitiveCompanion:
    def test_gf3_degree_two(self, gf3):
        # x^2 + x + 2
        P = primitive_companion(gf3, 2)
        assert P.to_rows() == [[0, 1], [1, 2]]
        assert multiplicative_order(P) == 8

    def test_gf2_degree_three(self, gf2):
        # x^3 + x + 1
        P = primitive_companion(gf2, 3)
        assert P.to_rows() == [[0, 0, 1], [1, 0, 1], [0, 1, 0]]
        assert multiplicative_order(P) == 7

    def test_extension_field_rejected(self, gf4):
        with pytest.raises(UnsupportedParams):
            primitive_companion(gf4, 2)

    def test_degree(self, gf2):
        with pytest.raises(InputError):
            primitive_companion(gf2, 0)

    def test_order_cap(self, gf2, caps):
        caps.MAX_ORDER = 10
        with pytest.raises(SearchSpaceTooLarge):
            primitive_companion(gf2, 4)


class TestIngested:
    def test_identity_map(self, gf2):
        gens = [identity(gf2, 2), elementary(gf2, 2, 2, 1, 2)]
        report = fixture_service.run_ingested(map_new(code_new(gf2, 2, 2, gens), gens))
        assert report.passed
        assert report.expected == {}
        assert report.computed == {
            "isometry": True,
            "identity_pair": True,
            "refuted": False,
            "extendable": True,
        }
        assert report.auxiliary["witness"] is not None

    def test_rank_violation(self):
        F = make_field(2)
        C = code_new(F, 2, 2, [identity(F, 2)])
        report = fixture_service.run_ingested(map_new(C, [elementary(F, 2, 2, 1, 1)]))
        assert report.passed
        assert report.computed["isometry"] is False
        assert report.computed["refuted"] is True
        assert report.computed["extendable"] is False
