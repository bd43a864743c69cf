import itertools

import pytest

from fclc.constructions import (Codebook, construct, construct_lee_weight_fclc, construct_local_fclc,
                                construct_modsum_fclc, construct_wdist_fclc, lee_weight_parity,
                                parity_map_lee_weight, parity_map_modsum, redundancy_of, verify_fclc)
from fclc.errors import DomainError, UnsupportedParametersError
from fclc.functions import TargetFunction
from fclc.irregular import search_min_length
from fclc.lee import ZqVector, ball_offsets, lee_distance
from fclc.matrices import function_distance, function_distance_matrix


def lee(a, b, q):
    return min((a - b) % q, (b - a) % q)


def pairwise_ok(cb):
    # quadratic oracle over every pair of records
    need = 2 * cb.t + 1
    for a, b in itertools.combinations(cb.records, 2):
        if a.f != b.f and lee_distance(ZqVector(cb.q, a.c), ZqVector(cb.q, b.c)) < need:
            return False
    return True


class TestGolden:
    @pytest.mark.parametrize("name,build", [
        ("lee_weight_q5_k3_t1.csv", lambda: construct_lee_weight_fclc(5, 3, 1)),
        ("modsum_q5_k2_t1.csv", lambda: construct_modsum_fclc(5, 2, 1)),
        ("modsum_q6_k2_t2.csv", lambda: construct_modsum_fclc(6, 2, 2)),
    ])
    def test_golden_csv_files(self, fixtures, name, build):
        assert build().to_csv() == (fixtures / name).read_text()

    def test_rows(self):
        assert construct_lee_weight_fclc(5, 3, 1).encode((2, 2, 2)) == (2, 2, 2, 2)
        assert construct_lee_weight_fclc(5, 3, 1).encode((0, 0, 0)) == (0, 0, 0, 0)
        assert construct_modsum_fclc(5, 2, 1).encode((2, 3)) == (2, 3, 0)
        cb = construct_modsum_fclc(6, 2, 2)
        assert cb.encode((1, 5)) == (1, 5, 0, 0, 0) and cb.r == 3

    def test_json_roundtrip(self, tmp_path):
        cb = construct_modsum_fclc(6, 2, 2)
        path = tmp_path / "cb.json"
        path.write_text(cb.to_json())
        back = Codebook.load(str(path))
        assert back.to_json() == cb.to_json()

    def test_malformed(self):
        with pytest.raises(DomainError):
            Codebook.from_dict({"q": 5})
        with pytest.raises(DomainError):
            construct_modsum_fclc(5, 2, 1).encode((9, 9, 9))


class TestParityMaps:
    def test_lee_weight_examples(self):
        assert [parity_map_lee_weight(5, 6)[w] for w in range(7)] == [0, 2, 4, 1, 3, 0, 2]
        assert [parity_map_lee_weight(6, 9)[w] for w in range(10)] == [0, 2, 4, 1, 3, 5, 0, 2, 4, 1]
        assert parity_map_lee_weight(7, 3)[0] == 0
        with pytest.raises(UnsupportedParametersError):
            parity_map_lee_weight(4, 3)

    @pytest.mark.parametrize("q", [5, 7, 9, 11])
    def test_odd_distance_law(self, q):
        for w in range(4 * q):
            p, s = lee_weight_parity(w, q), lee_weight_parity(w + 1, q)
            assert lee(p, s, q) == 2
            assert lee_weight_parity(w + q, q) == p

    @pytest.mark.parametrize("q", [6, 8, 10, 12])
    def test_even_seam_is_distance_one(self, q):
        # the doubling map for even q puts weights q-1 and q at parity distance 1
        assert lee(lee_weight_parity(q - 1, q), lee_weight_parity(q, q), q) == 1
        assert lee(lee_weight_parity(q // 2 - 1, q), lee_weight_parity(q // 2, q), q) == 3

    def test_modsum_map(self):
        assert [parity_map_modsum(6)[s] for s in range(6)] == [0, 2, 4, 1, 5, 3]
        assert [parity_map_modsum(5)[s] for s in range(5)] == [0, 2, 4, 1, 3]

    @pytest.mark.parametrize("q", [6, 8, 10])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_modsum_even_close_parities_far_labels(self, q, k):
        if q**k > 1000:
            pytest.skip("desk scale")
        f = TargetFunction.modular_sum(q, k)
        pm = parity_map_modsum(q)
        for a, b in itertools.combinations(range(q), 2):
            if lee(pm[a], pm[b], q) == 1:
                assert function_distance(f, a, b) >= 2


class TestRedundancy:
    def test_examples(self):
        assert redundancy_of("lee-weight", 5, 2, 1) == 1
        assert redundancy_of("lee-weight", 5, 2, 2) == 3
        assert redundancy_of("modsum", 6, 4, 2) == 3
        assert redundancy_of("local", 6, 1, 4, lam=3) == 4
        assert redundancy_of("wdist", 5, 3, 1, T=7) == 0
        assert redundancy_of("wdist", 6, 3, 2, T=2) == 2

    @pytest.mark.parametrize("args", [("lee-weight", 4, 2, 1), ("wdist", 6, 2, 1), ("modsum", 3, 1, 1),
                                      ("local", 6, 1, 1), ("bogus", 5, 1, 1)])
    def test_inadmissible(self, args):
        with pytest.raises(UnsupportedParametersError):
            redundancy_of(*args, T=2 if args[0] == "wdist" else None)

    def test_wdist_t_above_T(self):
        with pytest.raises(UnsupportedParametersError):
            redundancy_of("wdist", 6, 3, 3, T=2)

    def test_local_lambda_too_big(self):
        with pytest.raises(UnsupportedParametersError):
            redundancy_of("local", 6, 1, 1, lam=4)


def _grid(qs, kmax=3, vmax=1000, tmax=4):
    for q in qs:
        for k in range(1, kmax + 1):
            if q**k > vmax:
                continue
            for t in range(1, min(tmax, q - 1) + 1):
                yield q, k, t


class TestVerification:
    def test_examples(self, fixtures):
        assert verify_fclc(construct_lee_weight_fclc(5, 3, 1), 1)
        assert verify_fclc(construct_modsum_fclc(6, 2, 2), 2)
        res = verify_fclc(construct_lee_weight_fclc(5, 3, 1).with_parity_removed(), 1)
        assert not res and res.witness == ((0, 0, 0), (0, 0, 1))

    @pytest.mark.parametrize("cb", [construct_lee_weight_fclc(5, 2, 1), construct_lee_weight_fclc(6, 2, 1),
                                    construct_modsum_fclc(6, 2, 1), construct_modsum_fclc(5, 2, 2)])
    def test_ball_scan_matches_pairwise(self, cb):
        assert bool(verify_fclc(cb)) == pairwise_ok(cb)

    def test_non_systematic_path(self):
        cb = Codebook(5, 1, 1, 1, "custom", {}, [((0,), 0, (0, 0)), ((1,), 1, (3, 3)), ((2,), 1, (1, 1))])
        res = verify_fclc(cb)
        assert not res and res.witness == ((0,), (2,))

    def test_systematic(self):
        for cb in (construct_lee_weight_fclc(7, 2, 2), construct_modsum_fclc(6, 2, 3)):
            assert cb.is_systematic()
            assert all(len(set(rec.c[cb.k:])) <= 1 for rec in cb.records)

    def test_modsum_all_regimes(self):
        for q, k, t in _grid(range(5, 10)):
            cb = construct_modsum_fclc(q, k, t)
            assert verify_fclc(cb), (q, k, t)

    def test_lee_weight_odd_base_regime(self):
        for q, k, t in _grid([5, 7, 9]):
            if 2 * t <= q - 3:
                assert verify_fclc(construct_lee_weight_fclc(q, k, t)), (q, k, t)

    def test_lee_weight_odd_extended_regime_k_up_to_2(self):
        for q, k, t in _grid([5, 7, 9], kmax=2):
            if 2 * t > q - 3:
                assert verify_fclc(construct_lee_weight_fclc(q, k, t)), (q, k, t)

    def test_lee_weight_even_single_symbol(self):
        for q in (6, 8, 10):
            for t in range(1, q):
                assert verify_fclc(construct_lee_weight_fclc(q, 1, t)), (q, t)

    @pytest.mark.parametrize("q,k,t,witness", [(6, 2, 1, ((2, 3), (3, 3))), (6, 3, 1, ((0, 2, 3), (0, 3, 3))),
                                               (8, 2, 1, None), (10, 2, 2, None)])
    def test_lee_weight_even_seam_defect(self, q, k, t, witness):
        res = verify_fclc(construct_lee_weight_fclc(q, k, t))
        assert not res
        if witness:
            assert res.witness == witness
        a, b = res.witness
        f = TargetFunction.lee_weight(q, k)
        cb = construct_lee_weight_fclc(q, k, t)
        assert f(a) != f(b)
        assert lee_distance(ZqVector(q, cb.encode(a)), ZqVector(q, cb.encode(b))) < 2 * t + 1

    def test_lee_weight_extended_odd_weights_q_apart(self):
        res = verify_fclc(construct_lee_weight_fclc(5, 3, 3))
        assert not res

    def test_even_seam_optimum_still_one(self):
        # the optimal redundancy at (6,2,1) is 1 even though the doubling map fails there
        D = function_distance_matrix(TargetFunction.lee_weight(6, 2), 1)
        res = search_min_length(D, 6)
        assert res.length == 1
        pm = {w: res.witness.codewords[w][0] for w in range(7)}
        cb = Codebook(6, 2, 1, 1, "custom", pm,
                      [(u, sum(min(x, 6 - x) for x in u), u + (pm[sum(min(x, 6 - x) for x in u)],))
                       for u in itertools.product(range(6), repeat=2)])
        assert verify_fclc(cb)

    def test_wdist(self):
        cb = construct_wdist_fclc(6, 1, 1, 2)
        assert cb.encode((1,)) == (1, 0) and cb.encode((2,)) == (2, 2)
        assert verify_fclc(cb) and pairwise_ok(cb)
        cb = construct_wdist_fclc(6, 3, 2, 2)
        assert cb.r == 2 and verify_fclc(cb)
        cb = construct_wdist_fclc(5, 3, 1, 7)
        assert cb.r == 0 and verify_fclc(cb)

    def test_wdist_grid_block_size_above_one(self):
        for q, k, t in _grid(range(5, 10)):
            E0 = k * (q // 2) + 1
            for T in range(2, E0 + 1):
                if E0 % T == 0 and t <= T:
                    assert verify_fclc(construct_wdist_fclc(q, k, t, T)), (q, k, t, T)

    def test_wdist_divisibility(self):
        with pytest.raises(UnsupportedParametersError):
            construct_wdist_fclc(6, 2, 1, 2)


class TestLocal:
    def test_three_colors_q6(self):
        f = TargetFunction.from_callable(6, 1, lambda u: u[0] // 2)
        cb = construct_local_fclc(f, 1, 3)
        assert cb.r == 1 and set(cb.parity_map.values()) == {0, 2, 4}
        assert verify_fclc(cb) and pairwise_ok(cb)

    def test_constant(self):
        f = TargetFunction.from_callable(10, 2, lambda u: 7)
        for t in (1, 5, 6, 11):
            cb = construct_local_fclc(f, t, 1)
            assert cb.r == -(-t // 5) and set(rec.c[2:] for rec in cb.records) <= {(0,) * cb.r}
            assert verify_fclc(cb)

    def test_lee_weight_as_local(self):
        cb = construct_local_fclc(TargetFunction.lee_weight(12, 2), 1, 5)
        assert cb.r == 1 and verify_fclc(cb) and pairwise_ok(cb)

    def test_not_bounded(self):
        with pytest.raises(DomainError):
            construct_local_fclc(TargetFunction.lee_weight(6, 1), 1, 3)

    @pytest.mark.parametrize("spec,q,k,t,lam", [("lee-weight", 10, 2, 1, 5), ("modsum", 12, 1, 1, 5),
                                                ("proj:1", 12, 2, 1, 6), ("modsum", 10, 1, 1, 5)])
    def test_close_messages_get_far_parities(self, spec, q, k, t, lam):
        from fclc.functions import parse_function_spec
        f = parse_function_spec(spec, q, k)
        cb = construct("local", q, k, t, lam=lam, function=f)
        step = q // (2 * lam)
        for rec in cb.records:
            for e in ball_offsets(k, 2 * t, q):
                v = tuple((a + b) % q for a, b in zip(rec.u, e))
                other = cb._by_u[v]
                if other.f != rec.f:
                    assert lee(rec.c[k] if cb.r else 0, other.c[k] if cb.r else 0, q) >= 2 * step
        assert verify_fclc(cb)
