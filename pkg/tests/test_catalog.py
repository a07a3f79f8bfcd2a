"""Tests for the named-arrangement catalog and its parametric families."""

from __future__ import annotations

from fractions import Fraction

import pytest

from freearr.catalog import (
    CatalogError,
    catalog_family,
    catalog_get,
    catalog_names,
    dual_hesse,
    eleven_if,
    family13,
    family13_family,
    family15,
    family15_family,
    g443,
    pentagonal,
)
from freearr.lattice import (
    char_poly,
    compute_lattice,
    exponents_from_charpoly,
    lattice_isomorphic,
)
from freearr.scalar import FieldCtx, QuadElem


class TestBuilders:
    def test_sizes_and_fields(self):
        assert len(dual_hesse()) == 9 and dual_hesse().ctx.disc == -3
        assert len(pentagonal()) == 11 and pentagonal().ctx.disc == 5
        assert len(g443()) == 12 and g443().ctx.disc == -1
        assert len(eleven_if()) == 11 and eleven_if().ctx.disc is None

    def test_profiles(self):
        assert compute_lattice(dual_hesse()).profile == (0, 12)
        assert compute_lattice(pentagonal()).profile == (10, 5, 5)
        assert compute_lattice(g443()).profile == (0, 16, 3)
        assert compute_lattice(eleven_if()).profile == (10, 5, 5)

    def test_infinity_line_last_in_cones(self):
        for A in (dual_hesse(), pentagonal()):
            assert A[len(A) - 1].coeffs[2] == 1
            assert A[len(A) - 1].coeffs[0].is_zero()


class TestFamily13:
    def test_generic(self):
        A = family13(3)
        lat = compute_lattice(A)
        assert len(A) == 13
        assert lat.profile == (21, 3, 3, 3)
        assert exponents_from_charpoly(char_poly(A, lat)) == (1, 6, 6)

    def test_lattice_change_values(self):
        for lam in (-1, 2, Fraction(1, 2)):
            A = family13(lam)
            lat = compute_lattice(A)
            assert lat.profile == (18, 4, 3, 3)
            assert exponents_from_charpoly(char_poly(A, lat)) == (1, 5, 7)

    def test_degenerations(self):
        assert len(family13(0)) < 13
        assert len(family13(1)) < 13
        w = QuadElem(FieldCtx(-3), Fraction(1, 2), Fraction(1, 2))
        assert (w * w - w + 1).is_zero()
        assert len(family13(w)) == 11

    def test_sqrt3_form_same_lattice(self):
        a = compute_lattice(family13(5))
        b = compute_lattice(family13(5, sqrt3=True))
        assert a.profile == b.profile
        assert lattice_isomorphic(a, b)

    def test_quadratic_parameters_generic(self):
        golden = QuadElem(FieldCtx(5), Fraction(1, 2), Fraction(1, 2))
        root_m1 = FieldCtx(-1).sqrt_gen()
        for lam in (golden, root_m1):
            lat = compute_lattice(family13(lam))
            assert lat.profile == (21, 3, 3, 3)

    def test_family_object(self):
        fam = family13_family()
        assert fam.generic_size() == 13
        assert fam.ctx.parametric
        assert len(fam.arrangement()) == 13


class TestFamily15:
    def test_generic(self):
        A = family15(7)
        lat = compute_lattice(A)
        assert len(A) == 15
        assert lat.profile == (27, 6, 0, 6)
        assert exponents_from_charpoly(char_poly(A, lat)) == (1, 7, 7)

    def test_degenerations(self):
        assert len(family15(0)) == 7
        assert len(family15(1)) == 6
        assert len(family15(Fraction(1, 2))) == 9

    def test_simplicial_specializations(self):
        # all four quadratic exceptional values give one simplicial lattice
        vals = [
            QuadElem(FieldCtx(5), Fraction(-1, 2), Fraction(1, 2)),
            QuadElem(FieldCtx(5), Fraction(-1, 2), Fraction(-1, 2)),
            QuadElem(FieldCtx(5), Fraction(3, 2), Fraction(1, 2)),
            QuadElem(FieldCtx(5), Fraction(3, 2), Fraction(-1, 2)),
        ]
        lats = []
        for lam in vals:
            A = family15(lam)
            lat = compute_lattice(A)
            assert len(A) == 15
            assert lat.profile == (15, 10, 0, 6)
            assert exponents_from_charpoly(char_poly(A, lat)) == (1, 5, 9)
            lats.append(lat)
        for lat in lats[1:]:
            assert lattice_isomorphic(lats[0], lat)
        assert not lattice_isomorphic(lats[0], compute_lattice(family15(7)))

    def test_family_object(self):
        fam = family15_family()
        assert fam.generic_size() == 15
        assert len(fam.arrangement()) == 15


class TestRegistry:
    def test_names(self):
        assert catalog_names() == [
            "dual_hesse",
            "eleven_if",
            "family13",
            "family15",
            "g443",
            "pentagonal",
        ]

    def test_get(self):
        assert len(catalog_get("dual_hesse")) == 9
        assert len(catalog_get("family13", 3)) == 13

    def test_param_errors(self):
        with pytest.raises(CatalogError):
            catalog_get("nope")
        with pytest.raises(CatalogError):
            catalog_get("family13")
        with pytest.raises(CatalogError):
            catalog_get("dual_hesse", 3)

    def test_family_accessor(self):
        assert catalog_family("family15").name == "family15"
        with pytest.raises(CatalogError):
            catalog_family("g443")


class TestSelfcheck:
    def test_plain_entries(self):
        from freearr.catalog import catalog_selfcheck

        for name in ("dual_hesse", "pentagonal", "g443", "eleven_if"):
            report = catalog_selfcheck(name)
            assert report["verdict"] == "free"

    def test_family13_regimes(self):
        from freearr.catalog import catalog_selfcheck

        assert catalog_selfcheck("family13", 3)["tag"] == "S-exceptional"
        assert catalog_selfcheck("family13", 2)["tag"] == "IF"
        assert catalog_selfcheck("family13", 0)["tag"] == "degenerate"
        w = QuadElem(FieldCtx(-3), Fraction(1, 2), Fraction(1, 2))
        assert catalog_selfcheck("family13", w)["tag"] == "degenerate"
        golden = QuadElem(FieldCtx(5), Fraction(1, 2), Fraction(1, 2))
        assert catalog_selfcheck("family13", golden)["tag"] == "S-exceptional"

    def test_family15_regimes(self):
        from freearr.catalog import catalog_selfcheck

        assert catalog_selfcheck("family15", 7)["tag"] == "S-exceptional"
        assert catalog_selfcheck("family15", 1)["tag"] == "degenerate"
        for center in (Fraction(3, 2), Fraction(-1, 2)):
            lam = QuadElem(FieldCtx(5), center, Fraction(1, 2))
            report = catalog_selfcheck("family15", lam)
            assert report["tag"] == "family"
            assert report["exponents"] == (1, 5, 9)
