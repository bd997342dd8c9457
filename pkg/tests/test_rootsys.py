import random
from fractions import Fraction

import pytest

from weylchar.rootsys import (
    CartanDatum,
    RootVector,
    WeightVector,
    antidominant_representative,
    bilinear,
    cartan_datum,
    dominant_representative,
    load_cartan,
    positive_roots,
    rho_root_coords,
    weyl_orbit,
    weyl_vector,
)
from weylchar.weyloracle import weyl_order

# positive root system of F4 in simple-root coordinates
F4_POSITIVE_ROOTS = {
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (0, 1, 2, 0),
    (1, 1, 1, 0), (0, 1, 1, 1), (1, 1, 2, 0), (0, 1, 2, 1),
    (1, 1, 1, 1), (0, 1, 2, 2), (1, 2, 2, 0), (1, 1, 2, 1),
    (1, 1, 2, 2), (1, 2, 2, 1), (1, 2, 2, 2), (1, 2, 3, 1),
    (1, 2, 3, 2), (1, 2, 4, 2), (1, 3, 4, 2), (2, 3, 4, 2),
}

RANK4_BUILTINS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4",
                  "C2", "C3", "C4", "D4", "G2", "F4"]


class TestCartanDatum:
    def test_f4_normalization(self, f4):
        assert f4.rank == 4
        assert f4.root_norms == (2, 2, 1, 1)
        assert f4.gram == (
            (4, -2, 0, 0),
            (-2, 4, -2, 0),
            (0, -2, 2, -1),
            (0, 0, -1, 2),
        )

    def test_rejects_bad_diagonal(self):
        with pytest.raises(ValueError):
            CartanDatum(((1,),), (1,))

    def test_rejects_positive_offdiagonal(self):
        with pytest.raises(ValueError):
            CartanDatum(((2, 1), (1, 2)), (1, 1))

    def test_rejects_asymmetric_zero(self):
        with pytest.raises(ValueError):
            CartanDatum(((2, 0), (-1, 2)), (1, 1))

    def test_rejects_affine_matrix(self):
        # affine A1: quadratic form is degenerate
        with pytest.raises(ValueError):
            CartanDatum(((2, -2), (-2, 2)), (1, 1))

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            cartan_datum("H3")
        with pytest.raises(ValueError):
            cartan_datum("E9")

    def test_load_cartan_dict_and_file(self, tmp_path, f4):
        payload = {
            "cartan": [list(r) for r in f4.cartan],
            "norms": ["2", "2", "1", "1"],
        }
        assert load_cartan(payload) == f4
        path = tmp_path / "f4.json"
        path.write_text(
            '{"cartan": %s, "norms": [2, 2, 1, 1]}'
            % str([list(r) for r in f4.cartan])
        )
        assert load_cartan(path) == f4


class TestBilinear:
    def test_f4_root_pairings(self, f4):
        a = [RootVector(tuple(int(i == j) for j in range(4))) for i in range(4)]
        assert bilinear(f4, a[0], a[0]) == 4
        assert bilinear(f4, a[1], a[1]) == 4
        assert bilinear(f4, a[2], a[2]) == 2
        assert bilinear(f4, a[3], a[3]) == 2
        assert bilinear(f4, a[0], a[1]) == -2
        assert bilinear(f4, a[1], a[2]) == -2
        assert bilinear(f4, a[2], a[3]) == -1
        assert bilinear(f4, a[0], a[2]) == 0

    def test_zero_vector(self, f4):
        zero = RootVector((0, 0, 0, 0))
        x = WeightVector((1, 2, 3, 4))
        assert bilinear(f4, x, zero) == 0
        assert bilinear(f4, zero, zero) == 0

    def test_dimension_mismatch(self, f4):
        with pytest.raises(ValueError):
            bilinear(f4, RootVector((1, 0)), RootVector((0, 1, 0, 0)))

    def test_symmetry_on_random_vectors(self, f4):
        rng = random.Random(7)
        for _ in range(50):
            x = RootVector(tuple(rng.randint(-3, 3) for _ in range(4)))
            y = WeightVector(tuple(Fraction(rng.randint(-6, 6), rng.choice([1, 2]))
                                   for _ in range(4)))
            assert bilinear(f4, x, y) == bilinear(f4, y, x)

    def test_mixed_basis_consistency(self, f4):
        # the same vector expressed in both bases pairs identically
        alpha1 = RootVector((1, 0, 0, 0))
        as_weight = f4.to_weight(alpha1)
        probe = WeightVector((1, 1, 1, 1))
        assert bilinear(f4, alpha1, probe) == bilinear(f4, as_weight, probe)

    def test_basis_round_trip(self, f4):
        rng = random.Random(11)
        for _ in range(25):
            labels = tuple(Fraction(rng.randint(-8, 8), rng.choice([1, 2, 3]))
                           for _ in range(4))
            coords = f4.root_coords_of_weight(labels)
            # exact inverse: back through the Cartan matrix
            back = tuple(
                sum(f4.cartan[i][j] * coords[j] for j in range(4))
                for i in range(4)
            )
            assert tuple(Fraction(b) for b in back) == tuple(Fraction(x) for x in labels)


class TestPositiveRoots:
    def test_f4_full_system(self, f4):
        roots = positive_roots(f4)
        assert len(roots) == 24
        assert {r.coords for r in roots} == F4_POSITIVE_ROOTS
        assert roots[-1].coords == (2, 3, 4, 2)  # unique highest root
        heights = [r.height for r in roots]
        assert heights == sorted(heights)

    def test_a1(self):
        roots = positive_roots(cartan_datum("A1"))
        assert [r.coords for r in roots] == [(1,)]

    def test_g2_against_reflection_closure(self):
        # independent oracle: close the simple roots under reflections,
        # keeping the vectors with nonnegative coordinates
        g2 = cartan_datum("G2")
        closure = {(1, 0), (0, 1)}
        while True:
            new = set()
            for beta in closure:
                labels = g2.labels_of_root(beta)
                for i in range(2):
                    image = tuple(
                        beta[j] - (labels[i] if j == i else 0) for j in range(2)
                    )
                    if all(c >= 0 for c in image) and image not in closure:
                        new.add(image)
            if not new:
                break
            closure |= new
        assert {r.coords for r in positive_roots(g2)} == closure
        assert len(closure) == 6

    @pytest.mark.parametrize("name", RANK4_BUILTINS)
    def test_count_matches_coxeter_number(self, name):
        datum = cartan_datum(name)
        roots = positive_roots(datum)
        h = roots[-1].height + 1
        assert 2 * len(roots) == datum.rank * h

    def test_deterministic_order(self, f4):
        assert [r.coords for r in positive_roots(f4)] == [
            r.coords for r in positive_roots(cartan_datum("F4"))
        ]


class TestWeylVectorAndOrbits:
    def test_f4_weyl_vector(self, f4):
        rho = weyl_vector(f4)
        assert rho.coeffs == (1, 1, 1, 1)
        assert rho_root_coords(f4) == (8, 15, 21, 11)
        # the alpha4 coefficient of the positive-root sum
        assert 2 * rho_root_coords(f4)[3] == 22

    def test_f4_height_coefficients_are_positive_integers(self, f4):
        # k_i d_i = (l_i, rho) with k_i the root coordinates of rho
        rho = weyl_vector(f4)
        for i, k in enumerate(rho_root_coords(f4)):
            assert isinstance(k, int) and k > 0
            assert bilinear(f4, f4.fundamental_weight(i), rho) == k * f4.root_norms[i]

    def test_a1_weyl_vector(self):
        a1 = cartan_datum("A1")
        assert weyl_vector(a1).coeffs == (1,)
        assert rho_root_coords(a1) == (Fraction(1, 2),)

    def test_f4_orbit_sizes(self, f4):
        sizes = [len(weyl_orbit(f4, f4.fundamental_weight(i))) for i in range(4)]
        assert sizes == [24, 96, 96, 24]

    def test_orbit_of_zero(self, f4):
        orbit = weyl_orbit(f4, WeightVector((0, 0, 0, 0)))
        assert orbit == (WeightVector((0, 0, 0, 0)),)

    def test_orbit_norm_invariance(self, f4):
        seed = WeightVector((1, 0, 2, 1))
        norm = bilinear(f4, seed, seed)
        for point in weyl_orbit(f4, seed):
            assert bilinear(f4, point, point) == norm

    @pytest.mark.parametrize("name", ["A2", "B2", "G2", "F4"])
    def test_orbit_sizes_divide_group_order(self, name):
        datum = cartan_datum(name)
        order = weyl_order(datum)
        for i in range(datum.rank):
            orbit = weyl_orbit(datum, datum.fundamental_weight(i))
            assert order % len(orbit) == 0

    def test_chamber_representatives(self, f4):
        w = WeightVector((1, 0, 2, 0))
        for point in weyl_orbit(f4, w):
            assert dominant_representative(f4, point) == w
        low = antidominant_representative(f4, w)
        assert all(c <= 0 for c in low.coeffs)
        # for F4 the longest element is -identity
        assert low.coeffs == (-1, 0, -2, 0)
