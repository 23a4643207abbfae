import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicell.poly import (
    LineP3,
    MultiPoly,
    PointP3,
    PolyParseError,
    intersect_lines,
    jacobian_vanishes,
    kernel_basis,
    parse_poly,
    poly_eval,
    restrict_to_line,
)


def line(a, b):
    return LineP3(parse_poly(a), parse_poly(b))


class TestParsing:
    def test_basic(self):
        p = parse_poly("x^2*z + y^3")
        assert p.coefficient((2, 0, 1, 0)) == 1
        assert p.coefficient((0, 3, 0, 0)) == 1
        assert p.total_degree() == 3

    def test_signs_and_coefficients(self):
        p = parse_poly("2*x^2*y - x^2*z - 3*t")
        assert p.coefficient((2, 1, 0, 0)) == 2
        assert p.coefficient((2, 0, 1, 0)) == -1
        assert p.coefficient((0, 0, 0, 1)) == -3

    def test_repeated_variable(self):
        assert parse_poly("x*x*y") == parse_poly("x^2*y")

    def test_rejects_garbage(self):
        for text in ["", "x +", "x y", "w^2", "^3", "x^", "2*", "(x+y)*z"]:
            with pytest.raises(PolyParseError):
                parse_poly(text)

    def test_roundtrip_canonical(self):
        texts = [
            "x*y^2 + y*t^2 + z^3",
            "2*x^2*y - x^2*z + x*y^2 - x*y*z - x*y*t - y^2*t + y*z*t",
            "x - t",
            "-x + 2*y - 3",
        ]
        for text in texts:
            assert str(parse_poly(text)) == text


def random_cubic(rng):
    terms = {}
    for _ in range(rng.randint(1, 8)):
        e = [0, 0, 0, 0]
        for _ in range(3):
            e[rng.randrange(4)] += 1
        coeff = rng.randint(-9, 9)
        if coeff:
            terms[tuple(e)] = terms.get(tuple(e), 0) + coeff
    return MultiPoly(terms)


class TestRingStructure:
    def test_eval_examples(self):
        p = parse_poly("x^2*z + y^3")
        assert poly_eval(p, PointP3((1, 0, 0, 0))) == 0
        assert poly_eval(p, PointP3((0, 0, 0, 1))) == 0
        assert poly_eval(p, PointP3((1, 1, 1, 0))) == 2

    def test_scalar_and_pow(self):
        p = parse_poly("x + y")
        assert p * 2 == parse_poly("2*x + 2*y")
        assert p**2 == parse_poly("x^2 + 2*x*y + y^2")

    def test_axioms_seeded(self):
        rng = random.Random(23)
        pts = [(1, 2, 3, 4), (0, 1, -1, 2), (5, -3, 2, 7)]
        for _ in range(50):
            p, q, r = (random_cubic(rng) for _ in range(3))
            assert p * (q + r) == p * q + p * r
            assert (p * q) * r == p * (q * r)
            for pt in pts:
                assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
                assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)

    def test_euler_relation_seeded(self):
        rng = random.Random(29)
        variables = [MultiPoly.variable(i) for i in range(4)]
        for _ in range(50):
            p = random_cubic(rng)
            total = MultiPoly.zero()
            for i, v in enumerate(variables):
                total = total + v * p.partial(i)
            assert total == p * 3

    @given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
    def test_eval_is_linear_in_poly(self, a, b, c, d):
        p = parse_poly("x*y - z*t")
        q = parse_poly("x^2 + y^2")
        pt = (a, b, c, d)
        assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


class TestLines:
    def test_restriction_zero_on_surface_line(self):
        g1 = parse_poly("x*y^2 + y*t^2 + z^3")
        assert restrict_to_line(g1, line("y", "z")).is_zero

    def test_restriction_on_conductor(self):
        r1 = parse_poly("x^2*z + y^3")
        assert restrict_to_line(r1, line("x", "y")).is_zero

    def test_restriction_nonzero(self):
        r1 = parse_poly("x^2*z + y^3")
        restricted = restrict_to_line(r1, line("y", "t"))
        # The line y = t = 0 is parametrized by (s, 0, u, 0), so the cubic
        # restricts to s^2 * u.
        assert restricted == MultiPoly({(2, 1): 1}, ("s", "u"))

    def test_degenerate_line_rejected(self):
        with pytest.raises(ValueError):
            line("x", "2*x")
        with pytest.raises(ValueError):
            LineP3(parse_poly("x*y"), parse_poly("z"))

    def test_restriction_matches_sampling(self):
        rng = random.Random(31)
        lines = [line("y", "z"), line("x", "t"), line("x - t", "y - z"), line("x", "y - z - t")]
        for _ in range(40):
            p = random_cubic(rng)
            for l in lines:
                vanishes = all(
                    poly_eval(p, pt) == 0 for pt in l.sample_points(5)
                )
                assert restrict_to_line(p, l).is_zero == vanishes

    def test_intersection(self):
        a = line("x", "y")
        b = line("x", "t")
        pt = intersect_lines(a, b)
        assert pt == PointP3((0, 0, 1, 0))
        with pytest.raises(ValueError):
            intersect_lines(a, line("2*x", "3*y"))

    def test_kernel_deterministic(self):
        basis = kernel_basis([[0, 1, 0, 0], [0, 0, 1, 0]])
        assert basis == [
            (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),
        ]


class TestJacobian:
    def test_catalog_points(self):
        g1 = parse_poly("x*y^2 + y*t^2 + z^3")
        g15 = parse_poly("x^2*y - x*y^2 + x*z^2 - y*t^2")
        assert jacobian_vanishes(g1, PointP3((1, 0, 0, 0)))
        assert jacobian_vanishes(g15, PointP3((1, 0, 0, 1)))
        assert not jacobian_vanishes(g1, PointP3((0, 1, 0, 0)))

    def test_requires_homogeneous(self):
        with pytest.raises(ValueError):
            jacobian_vanishes(parse_poly("x + 1"), PointP3((1, 0, 0, 0)))

    def test_scale_invariance(self):
        g15 = parse_poly("x^2*y - x*y^2 + x*z^2 - y*t^2")
        assert jacobian_vanishes(g15, PointP3((2, 0, 0, 2)))


class TestPoints:
    def test_projective_equality(self):
        assert PointP3((1, 2, 3, 4)) == PointP3((2, 4, 6, 8))
        assert PointP3((1, 0, 0, 0)) != PointP3((0, 1, 0, 0))
        assert hash(PointP3((1, 2, 3, 4))) == hash(PointP3((2, 4, 6, 8)))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            PointP3((0, 0, 0, 0))


@settings(max_examples=100)
@given(
    st.dictionaries(
        st.tuples(*(st.integers(0, 2) for _ in range(4))),
        st.integers(-5, 5),
        max_size=5,
    ),
    st.dictionaries(
        st.tuples(*(st.integers(0, 2) for _ in range(4))),
        st.integers(-5, 5),
        max_size=5,
    ),
)
def test_product_commutes_property(terms_a, terms_b):
    p = MultiPoly(terms_a)
    q = MultiPoly(terms_b)
    assert p * q == q * p
    assert str(parse_poly(str(p))) == str(p) if not p.is_zero else True
