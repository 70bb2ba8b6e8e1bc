import cmath
import math

import numpy as np
import pytest

from compspec import (Disk, GeometricTail, MobiusMap, Points, Spiral,
                      TypeClass, contains, denjoy_wolff, kms2t_essential_union,
                      lft_spectra, max_modulus, partition, region,
                      region_equal, rho, rho_star, spectral_radius_check,
                      synthesize)
from compspec.errors import InvalidDataError, NotCertifiedError
from compspec.spectrum import probe_points
from conftest import ROOT12

RNG = np.random.default_rng(411)


def random_region():
    prims = []
    for _ in range(RNG.integers(1, 5)):
        kind = RNG.integers(0, 4)
        if kind == 0:
            prims.append(Disk(float(RNG.uniform(0, 1.5))))
        elif kind == 1:
            prims.append(Spiral(complex(RNG.uniform(0.2, 5),
                                        RNG.uniform(-4, 4))))
        elif kind == 2:
            prims.append(GeometricTail(complex(*RNG.uniform(-0.5, 0.5, 2))))
        else:
            vals = RNG.uniform(-1, 1, (RNG.integers(1, 4), 2))
            prims.append(Points(tuple(complex(*v) for v in vals)))
    return region(*prims)


# -- region algebra ----------------------------------------------------

def test_canonicalization_idempotent():
    for _ in range(40):
        r = random_region()
        again = region(*r.primitives)
        assert again.primitives == r.primitives


def test_single_largest_disk():
    r = region(Disk(0.2), Disk(0.7), Disk(0.4))
    assert r.primitives == (Disk(0.7),)


def test_disk_absorbs_points_and_tails():
    r = region(Disk(0.5), Points((0.1 + 0.1j, 0.9)), GeometricTail(0.3))
    disks = [p for p in r.primitives if isinstance(p, Disk)]
    assert disks == [Disk(0.5)]
    # 0.9 survives, 0.1+0.1j does not; tail survives (its k=0 value is 1)
    pts = [p for p in r.primitives if isinstance(p, Points)]
    assert pts and pts[0].values == (0.9 + 0j,)
    assert any(isinstance(p, GeometricTail) for p in r.primitives)


def test_unit_disk_absorbs_spiral_and_tail():
    r = region(Disk(1.0), Spiral(8), GeometricTail(0.5), Points((0.5,)))
    assert r.primitives == (Disk(1.0),)


def test_zero_radius_disk_is_origin():
    r = region(Disk(0.0))
    assert r.primitives == (Points((0j,)),)


def test_degenerate_tail_becomes_points():
    r = region(GeometricTail(0.0))
    assert r.primitives == (Points((0j, 1 + 0j)),)


def test_points_dedup():
    r = region(Points((0.5, 0.5 + 1e-12, -0.5)))
    assert len(r.primitives) == 1
    assert len(r.primitives[0].values) == 2


def test_invalid_primitives():
    with pytest.raises(InvalidDataError):
        Disk(-1.0)
    with pytest.raises(InvalidDataError):
        Spiral(-1 + 2j)
    with pytest.raises(InvalidDataError):
        GeometricTail(1.0)


# -- membership --------------------------------------------------------

def test_spiral_membership():
    for a in (8.0 + 0j, 1.0 + 3j, 0.4 - 2.5j):
        sp = region(Spiral(a))
        for lam in (1.0, cmath.exp(-a), cmath.exp(-2 * a), 0.0):
            assert contains(sp, lam)
        assert not contains(sp, 1.5)
        if a.imag != 0:
            # off the curve: same modulus as a spiral point, wrong phase
            assert not contains(sp, cmath.exp(-a * 0.5) * 1.01)
        else:
            assert not contains(sp, 0.5 + 0.01j)


def test_spiral_rejects_above_unit_modulus():
    sp = region(Spiral(1 + 5j))
    for lam in (1.2, -1.3j, 1.1 * cmath.exp(1j)):
        assert abs(lam) > 1
        assert not contains(sp, lam)


def test_real_spiral_is_unit_segment():
    sp = region(Spiral(8.0))
    for x in np.linspace(0, 1, 23):
        assert contains(sp, complex(x))
    assert not contains(sp, 0.5 + 0.01j)
    assert not contains(sp, -0.1)


def test_tail_membership():
    t = region(GeometricTail(0.5j))
    for k in range(10):
        assert contains(t, (0.5j) ** k)
    assert contains(t, 0.0)
    assert not contains(t, 0.4)


def test_max_modulus():
    assert max_modulus(region(Disk(0.3), Spiral(8))) == 1.0
    assert max_modulus(region(Disk(0.3), Points((0.5,)))) == 0.5
    assert max_modulus(region(Disk(0.3))) == 0.3


def test_region_equal():
    a = region(Disk(1 / 3), Spiral(8))
    b = region(Spiral(8), Disk(1 / 3))
    assert region_equal(a, b)
    assert not region_equal(a, region(Disk(1 / 3)))
    assert not region_equal(region(Spiral(8)), region(Spiral(1 + 1j)))
    # spirals with the same trace (parameter differences ~ 1e-12) agree
    assert region_equal(region(Spiral(8)), region(Spiral(8 + 1e-12)))


def test_probe_points_lie_in_region():
    for _ in range(20):
        r = random_region()
        for z in probe_points(r):
            assert contains(r, z)


# -- linear-fractional dispatch ----------------------------------------

def test_lft_psi1():
    full, ess = lft_spectra(MobiusMap(-3, 4, -4, 5))
    seg = region(Spiral(8))
    assert region_equal(full, seg) and region_equal(ess, seg)


def test_lft_psi2():
    full, ess = lft_spectra(MobiusMap(41, 32, 40, 49))
    assert region_equal(ess, region(Disk(1 / 3)))
    assert region_equal(full, region(Disk(1 / 3), Points((1.0,))))


def test_lft_compact():
    # z -> z/2 + 1/4: interior fixed point, no boundary contact
    full, ess = lft_spectra(MobiusMap(0.5, 0.25, 0, 1))
    assert region_equal(ess, region(Points((0j,))))
    assert contains(full, 0.5)  # eigenvalue tail at phi'(omega) = 1/2
    assert contains(full, 1.0) and contains(full, 0.0)


def test_lft_hyperbolic_boundary_dw():
    # z -> (z + 1)/2 fixes 1 with derivative 1/2 and has no other
    # fixed point in the closed disk
    full, ess = lft_spectra(MobiusMap(1, 1, 0, 2))
    assert region_equal(full, region(Disk(math.sqrt(2))))
    assert region_equal(ess, region(Disk(math.sqrt(2))))


def test_lft_rejects_automorphisms():
    with pytest.raises(InvalidDataError):
        lft_spectra(MobiusMap(1j, 0, 0, 1))


# -- rho ---------------------------------------------------------------

def test_rho(eight_point):
    part = partition(eight_point)
    assert rho(part) == pytest.approx(ROOT12, abs=1e-12)
    # 144^(-1/4) = 1/sqrt(12) beats 15^(-1/2)
    assert rho(part) > 15.0 ** -0.5


def test_rho_star(lollipop):
    part = partition(lollipop)
    dw_idx = next(i for i, c in enumerate(part.cycles)
                  if abs(c.points[0] - 1) < 1e-9)
    assert rho_star(part, dw_idx) == pytest.approx(1 / 3, abs=1e-9)
    only = partition(RationalSymbol_psi1())
    assert rho_star(only, 0) == 0.0


def RationalSymbol_psi1():
    from compspec import RationalSymbol
    return RationalSymbol((4, -3), (5, -4))


# -- synthesis ---------------------------------------------------------

def test_synthesize_lollipop(lollipop):
    rep = synthesize(lollipop)
    assert rep.type_class is TypeClass.PARABOLIC_NON_AUTOMORPHISM
    expected = region(Disk(1 / 3), Spiral(8))
    assert region_equal(rep.essential, expected)
    assert region_equal(rep.full, expected)
    disk = [p for p in rep.essential.primitives if isinstance(p, Disk)][0]
    spiral = [p for p in rep.essential.primitives if isinstance(p, Spiral)][0]
    assert abs(disk.radius - 1 / 3) < 1e-9
    assert abs(spiral.a - 8) < 1e-9


def test_synthesize_two_cycle(two_cycle):
    rep = synthesize(two_cycle)
    assert rep.type_class is TypeClass.DILATION
    assert region_equal(rep.essential, region(Disk(5 ** -0.5)))
    assert region_equal(rep.full, region(Disk(5 ** -0.5), Points((1.0,))))


def test_synthesize_eight_point(eight_point):
    rep = synthesize(eight_point)
    assert rep.type_class is TypeClass.DILATION
    assert rep.rho == pytest.approx(ROOT12, abs=1e-9)
    assert region_equal(rep.essential, region(Disk(ROOT12)))
    assert region_equal(rep.full, region(Disk(ROOT12), Points((1.0,))))


def test_synthesize_square_root(square_root):
    rep = synthesize(square_root)
    assert rep.type_class is TypeClass.HYPERBOLIC
    assert region_equal(rep.full, region(Disk(math.sqrt(2))))
    assert region_equal(rep.essential, region(Disk(math.sqrt(2))))


def test_synthesize_compact(compact_half):
    rep = synthesize(compact_half)
    assert region_equal(rep.essential, region(Points((0j,))))
    assert region_equal(rep.full, region(GeometricTail(0.5)))


def test_synthesize_dilation_eigenvalue_powers():
    # interior DW with derivative 0.9 and one boundary fixed point of
    # multiplier 100: finitely many eigenvalue powers stick out of the
    # essential disk of radius 0.1
    from compspec import (BoundaryDataSymbol, DenjoyWolffRecord, Location,
                          SecondOrderData)
    s = BoundaryDataSymbol(
        (SecondOrderData(1, 1, 100, 10500),),
        DenjoyWolffRecord(0, 0.9, Location.INTERIOR))
    rep = synthesize(s)
    assert rep.type_class is TypeClass.DILATION
    assert region_equal(rep.essential, region(Disk(0.1)))
    for k in range(22):  # 0.9^21 > 0.1 >= 0.9^22
        assert contains(rep.full, 0.9 ** k)
    assert not contains(rep.full, 0.95)
    assert not contains(rep.full, -0.5)


def test_synthesize_hyperbolic_rational():
    # phi(z) = (3z + 1)/4 fixes only z = 1, with derivative 3/4
    from compspec import RationalSymbol
    s = RationalSymbol((1, 3), (4,))
    rep = synthesize(s)
    assert rep.type_class is TypeClass.HYPERBOLIC
    assert region_equal(rep.full, region(Disk(math.sqrt(4 / 3))))
    assert spectral_radius_check(rep, denjoy_wolff(s))


def test_spectral_radius_check(lollipop, two_cycle, square_root):
    for s in (lollipop, two_cycle, square_root):
        assert spectral_radius_check(synthesize(s), denjoy_wolff(s))


def test_rejects_uncertified():
    from compspec import (BoundaryDataSymbol, DenjoyWolffRecord, Location,
                          SecondOrderData)
    bad = SecondOrderData(1, 1, 2, 0)
    s = BoundaryDataSymbol((bad,),
                           DenjoyWolffRecord(0, 0.5, Location.INTERIOR))
    with pytest.raises(NotCertifiedError):
        synthesize(s)


# -- cross-path agreement ----------------------------------------------

def test_kms2t_matches_synthesize_lollipop(lollipop):
    assert region_equal(kms2t_essential_union(lollipop),
                        synthesize(lollipop).essential, 1e-8)


def test_kms2t_matches_synthesize_square_root(square_root):
    assert region_equal(kms2t_essential_union(square_root),
                        synthesize(square_root).essential, 1e-8)


def test_kms2t_precondition(two_cycle):
    with pytest.raises(InvalidDataError):
        kms2t_essential_union(two_cycle)  # 2-cycle, not fixed points
