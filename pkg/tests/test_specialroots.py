import pytest

from weylchar.laurent import LaurentPolynomial as L
from weylchar.rootsys import RootVector, WeightVector, cartan_datum
from weylchar.specialroots import (
    GammaSystem,
    GammaSystemError,
    GammaTable,
    assign_signatures,
    build_gamma_tables,
    build_system,
    build_tuples,
    datum_fingerprint,
    denominator_product,
    exponents,
)
from weylchar.weyloracle import enumerate_weyl, weyl_order

RANK_LE_4 = ["A1", "A2", "A3", "A4", "B2", "B3", "B4",
             "C2", "C3", "C4", "D4", "G2", "F4"]


@pytest.fixture(scope="module")
def small_systems():
    return {name: build_system(cartan_datum(name)) for name in RANK_LE_4 if name != "F4"}


class TestGammaTables:
    def test_f4_sizes_and_anchors(self, f4_system):
        tables = f4_system.tables
        assert tables.sizes == (24, 96, 96, 24)
        assert tables.entries[0][0].coords == (0, 0, 0, 0)
        assert tables.entries[0][1].coords == (1, 0, 0, 0)  # second entry is a1
        assert tables.entries[0][-1].coords == (4, 6, 8, 4)
        assert tables.entries[3][-1].coords == (2, 4, 6, 4)

    def test_zero_heads_every_table(self, f4_system):
        for table in f4_system.tables.entries:
            assert table[0].coords == (0, 0, 0, 0)

    def test_entries_in_positive_lattice(self, f4_system):
        for table in f4_system.tables.entries:
            for vec in table:
                assert vec.is_nonnegative

    def test_entries_preserve_weight_length(self, f4, f4_system):
        from weylchar.rootsys import bilinear

        for i, table in enumerate(f4_system.tables.entries):
            lam = f4.fundamental_weight(i)
            target = bilinear(f4, lam, lam)
            for vec in table:
                shifted = lam - f4.to_weight(vec)
                assert bilinear(f4, shifted, shifted) == target

    def test_height_then_lex_order(self, f4_system):
        for table in f4_system.tables.entries:
            keys = [(v.height, v.coords) for v in table]
            assert keys == sorted(keys)

    def test_a1_table(self):
        a1 = cartan_datum("A1")
        tables = build_gamma_tables(a1)
        assert [v.coords for v in tables.entries[0]] == [(0,), (1,)]

    @pytest.mark.parametrize("name", RANK_LE_4)
    def test_sizes_equal_orbit_sizes(self, name):
        from weylchar.rootsys import weyl_orbit

        datum = cartan_datum(name)
        tables = build_gamma_tables(datum)
        expected = tuple(
            len(weyl_orbit(datum, datum.fundamental_weight(i)))
            for i in range(datum.rank)
        )
        assert tables.sizes == expected


class TestTuples:
    def test_f4_count(self, f4_system):
        assert len(f4_system.tuples) == 1152

    def test_anchor_tuples_present(self, f4_system):
        assert f4_system.tuples[0] == (0, 0, 0, 0)
        assert (0, 0, 0, 1) in set(f4_system.tuples)

    def test_a1_tuples(self):
        a1 = cartan_datum("A1")
        tables = build_gamma_tables(a1)
        assert build_tuples(a1, tables) == ((0,), (1,))

    @pytest.mark.parametrize("name", RANK_LE_4)
    def test_count_equals_group_order(self, name, f4_system, small_systems):
        system = f4_system if name == "F4" else small_systems[name]
        assert len(system.tuples) == weyl_order(system.datum)
        assert len(set(system.tuples)) == len(system.tuples)

    def test_corrupted_table_fails_count_check(self, f4):
        tables = build_gamma_tables(f4)
        # dropping one candidate starves the search below |W|
        broken = GammaTable(
            (tables.entries[0][:-1],) + tables.entries[1:]
        )
        with pytest.raises(GammaSystemError):
            build_tuples(f4, broken)


class TestSignatures:
    def test_f4_anchor_signs(self, f4_system):
        by_tuple = dict(zip(f4_system.tuples, f4_system.signatures))
        assert by_tuple[(0, 0, 0, 0)] == 1
        assert by_tuple[(0, 0, 0, 1)] == -1
        assert by_tuple[(23, 95, 95, 23)] == 1  # all-maximal tuple

    @pytest.mark.parametrize("name", RANK_LE_4)
    def test_signature_balance(self, name, f4_system, small_systems):
        system = f4_system if name == "F4" else small_systems[name]
        assert sum(system.signatures) == 0

    def test_a1_signed_monomials(self):
        a1 = cartan_datum("A1")
        system = build_system(a1)
        assert system.signatures == (1, -1)
        exps = exponents(a1, system, WeightVector((0,)))
        assert exps == [(1,), (0,)]  # u - 1 after normalization

    def test_signed_sum_identity(self, f4, f4_system):
        exps = exponents(f4, f4_system, WeightVector((0, 0, 0, 0)))
        signed = L(4, dict(zip(exps, f4_system.signatures)))
        assert signed == denominator_product(f4)

    def test_duplicated_tuple_rejected(self, f4, f4_system):
        tampered = f4_system.tuples[:1] + f4_system.tuples
        with pytest.raises(GammaSystemError):
            assign_signatures(f4, f4_system.tables, tampered)

    @pytest.mark.parametrize("name", RANK_LE_4)
    def test_tuples_realized_by_group_elements(self, name, f4_system, small_systems):
        """Every tuple comes from a Weyl element acting on all fundamental
        weights at once, and its signature is that element's determinant."""
        system = f4_system if name == "F4" else small_systems[name]
        datum = system.datum
        r = datum.rank
        fundamentals = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        realized = {}
        for elem in enumerate_weyl(datum):
            images = tuple(elem.apply_labels(lam) for lam in fundamentals)
            assert images not in realized
            realized[images] = elem.det
        for tup, sign in zip(system.tuples, system.signatures):
            images = []
            for i, vec in enumerate(system.gamma_vectors(tup)):
                glabels = datum.labels_of_root(vec.coords)
                images.append(tuple(
                    fundamentals[i][j] - glabels[j] for j in range(r)
                ))
            key = tuple(images)
            assert key in realized
            assert realized[key] == sign


class TestExponents:
    @pytest.mark.parametrize("name", RANK_LE_4)
    def test_injective_over_tuples(self, name, f4_system, small_systems):
        system = f4_system if name == "F4" else small_systems[name]
        datum = system.datum
        exps = exponents(datum, system, WeightVector((0,) * datum.rank))
        assert len(set(exps)) == len(exps)

    def test_zero_weight_reduces_to_base_exponents(self, f4, f4_system):
        base = f4_system.raw_exponents(WeightVector((0, 0, 0, 0)))
        again = f4_system.raw_exponents(WeightVector((0, 0, 0, 0)))
        assert base == again
        normalized = exponents(f4, f4_system, WeightVector((0, 0, 0, 0)))
        floor = [min(v[i] for v in base) for i in range(4)]
        rebuilt = [tuple(int(c - f) for c, f in zip(v, floor)) for v in base]
        assert normalized == rebuilt

    def test_identity_tuple_grows_with_each_label(self, f4, f4_system):
        zero = exponents(f4, f4_system, WeightVector((0, 0, 0, 0)))[0]
        for j in range(4):
            labels = tuple(int(i == j) for i in range(4))
            bumped = exponents(f4, f4_system, WeightVector(labels))[0]
            assert all(b >= z for b, z in zip(bumped, zero))
            assert sum(bumped) > sum(zero)

    def test_all_entries_nonnegative_integers(self, f4, f4_system):
        for labels in ((0, 0, 0, 0), (1, 0, 0, 0), (2, 1, 0, 3)):
            for e in exponents(f4, f4_system, WeightVector(labels)):
                assert all(isinstance(x, int) and x >= 0 for x in e)

    def test_rejects_non_dominant(self, f4, f4_system):
        with pytest.raises(ValueError):
            exponents(f4, f4_system, WeightVector((-1, 0, 0, 0)))


class TestSerializationAndCache:
    def test_json_round_trip(self, f4, f4_system):
        obj = f4_system.to_json_obj()
        again = GammaSystem.from_json_obj(obj, f4)
        assert again == f4_system

    def test_disk_cache_round_trip(self, tmp_path):
        g2 = cartan_datum("G2")
        first = build_system(g2, cache_dir=tmp_path)
        assert (tmp_path / f"system_{__import__('weylchar.specialroots', fromlist=['datum_fingerprint']).datum_fingerprint(g2)}.json").exists()
        second = build_system(g2, cache_dir=tmp_path)
        assert first == second

    def test_cache_rejects_wrong_datum(self, f4):
        g2 = cartan_datum("G2")
        obj = build_system(g2).to_json_obj()
        with pytest.raises(GammaSystemError):
            GammaSystem.from_json_obj(obj, f4)
