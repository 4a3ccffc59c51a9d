import pytest
from hypothesis import given, settings, strategies as st

from spectral_paths.spectral import (
    RestrictedPath,
    SpectralKey,
    Spectrum,
    YoungDiagram,
    beta,
    decode,
    degree,
    degree_by_maxima,
    encode,
    enumerate_restricted_paths,
    enumerate_young,
    fibers,
    ground_key,
    keys_up_to,
    parse_blocks,
    size,
    spectrum_of,
)
from spectral_paths.vertex_paths import FinitePath, SpinConfig, energy, spins_to_path

from . import oracles

H_A = (1, 2, 1, 2, 2, 1, 3, 0, 3, 2, 1, 2, 3, 0, 3, 1, 2, 3, 0, 3)
# adjacent entries summing to exactly l share a block, so 3 and 0, 3 form one
BLOCKS_A = [(1, 2, 1, 2), (2, 1), (3, 0, 3), (2, 1, 2), (3, 0, 3), (1, 2), (3, 0, 3)]
H_B = (0, 3, 1, 2, 1, 3, 0, 3, 1, 2, 1, 2, 1, 2, 2, 1, 2, 1, 3, 0, 3)
BLOCKS_B = [(0, 3), (1, 2, 1), (3, 0, 3), (1, 2, 1, 2, 1, 2), (2, 1, 2, 1), (3, 0, 3)]


def _block_values(bd, h):
    return [tuple(h[b.start - 1 : b.start - 1 + b.length]) for b in bd.blocks]


def test_example_a_blocks():
    h = Spectrum(3, 1, H_A)
    bd = parse_blocks(h)
    assert _block_values(bd, H_A) == BLOCKS_A
    assert bd.M == len(H_A)
    assert bd.h_sharp == (3, 2, 3, 3, 1)
    assert bd.interlacing_holds()


def test_example_a_decode():
    key = decode(Spectrum(3, 1, H_A))
    assert key.N == 11
    assert key.a.a == (0, 2, 1, 1, 0, 1, 0, 1, 1, 0, 1)
    assert key.r.heights == (0, 1, 2, 3, 2, 1, 2, 3, 2, 1, 0, 1)
    assert encode(key) == Spectrum(3, 1, H_A)


def test_example_b():
    h = Spectrum(3, 1, H_B)
    bd = parse_blocks(h)
    assert _block_values(bd, H_B) == BLOCKS_B
    assert bd.h_sharp == (1, 3, 3, 2)
    key = decode(h)
    assert key.N == 7
    assert key.a.a == (1, 1, 1, 3, 2, 1, 0)
    assert encode(key) == h


def test_block_counting_identity():
    for h in (H_A, H_B):
        key = decode(Spectrum(3, 1, h))
        bd = parse_blocks(Spectrum(3, 1, h))
        assert bd.M == bd.J + 2 * sum(key.a.a)


def test_example_a_size_is_51():
    a = YoungDiagram((0, 2, 1, 1, 0, 1, 0, 1, 1, 0, 1))
    assert a.partition() == (8, 7, 7, 6, 5, 5, 4, 4, 3, 2, 0)
    assert size(a) == 51 == sum(a.partition())


@pytest.mark.parametrize("l,k", [(1, 0), (1, 1), (3, 0), (3, 2), (4, 4)])
def test_ground_spectrum(l, k):
    h = Spectrum.ground(l, k)
    assert h.window == ()
    bd = parse_blocks(h)
    assert bd.blocks == () and bd.J == 0 and bd.h_sharp == (k,)
    key = decode(h)
    assert key == ground_key(l, k)
    assert key.r.heights == tuple(range(k + 1))
    assert key.a.is_zero()
    assert encode(key) == h


def test_worked_key_spectrum():
    p = spins_to_path(SpinConfig(3, 1, (3, -1, 1, 1)))
    h = spectrum_of(p)
    assert h.prefix(8) == (1, 2, 2, 2, 1, 2, 1, 2)
    key = SpectralKey(RestrictedPath(3, 1, (0, 1, 2, 1)), YoungDiagram((0, 1, 0)))
    assert decode(h) == key
    assert encode(key) == h


def test_encode_small_key():
    key = SpectralKey(RestrictedPath(1, 1, (0, 1)), YoungDiagram((0,)))
    assert encode(key) == Spectrum.ground(1, 1)


def test_spectrum_validation():
    with pytest.raises(ValueError):
        Spectrum(3, 1, (0, 1))  # 0 + 1 < 3
    with pytest.raises(ValueError):
        Spectrum(3, 1, (4,))
    with pytest.raises(ValueError):
        Spectrum(3, 1, (0,))  # seam: 0 + h_2 = 0 + 2 < 3
    assert Spectrum(3, 1, (1, 2, 1, 2)).window == ()
    assert Spectrum.from_dict(Spectrum(3, 1, H_A).to_dict()) == Spectrum(3, 1, H_A)


@pytest.mark.parametrize("heights,d", [((0, 1, 2, 3), 0), ((0, 1, 2, 1), 1), ((0, 1, 0, 1), 2)])
def test_degree_examples(heights, d):
    r = RestrictedPath(3, heights[-1], heights)
    assert degree(r) == d == degree_by_maxima(r)


@pytest.mark.parametrize("l", range(1, 5))
def test_degree_definitions_agree(l):
    for k in range(l + 1):
        for N in range(11):
            for r in enumerate_restricted_paths(l, k, N):
                assert degree(r) == degree_by_maxima(r) == oracles.degree_by_n(r.heights)


def test_size_and_beta_examples():
    assert size(YoungDiagram((0, 0, 0))) == 0
    assert size(YoungDiagram((0, 1, 0))) == 2
    assert beta(YoungDiagram((0, 0, 0, 0))) == (4,)
    assert beta(YoungDiagram((0, 1, 0))) == (1, 2)
    assert beta(YoungDiagram((0, 1, 0, 1, 0, 0, 1, 0, 0))) == (1, 2, 3, 3)
    assert beta(YoungDiagram((5, 0, 0))) == (3,)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=9))
def test_beta_is_a_composition(a):
    b = beta(YoungDiagram(tuple(a)))
    assert sum(b) == len(a)
    assert all(x > 0 for x in b)


def test_restricted_path_examples():
    got = [r.heights for r in enumerate_restricted_paths(3, 1, 3)]
    assert sorted(got) == [(0, 1, 0, 1), (0, 1, 2, 1)]
    assert [r.heights for r in enumerate_restricted_paths(1, 0, 2)] == [(0, 1, 0)]
    assert enumerate_restricted_paths(3, 2, 3) == []
    assert enumerate_restricted_paths(3, 2, 1) == []
    for l in range(1, 5):
        for k in range(l + 1):
            assert len(enumerate_restricted_paths(l, k, k)) == 1


@pytest.mark.parametrize("l", range(1, 5))
def test_restricted_paths_match_oracle(l):
    for k in range(l + 1):
        for N in range(9):
            got = [r.heights for r in enumerate_restricted_paths(l, k, N)]
            assert got == oracles.restricted_paths(l, k, N)


def test_restricted_path_validation():
    with pytest.raises(ValueError):
        RestrictedPath(2, 1, (0, 2, 1))
    with pytest.raises(ValueError):
        RestrictedPath(1, 1, (0, 1, 2, 1))
    with pytest.raises(ValueError):
        RestrictedPath(2, 0, (1, 0))


def test_young_examples():
    assert [y.a for y in enumerate_young(1, 0)] == [(0,)]
    assert [y.a for y in enumerate_young(1, 2)] == [(0,), (1,), (2,)]
    assert sorted(y.a for y in enumerate_young(2, 2)) == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert [y.a for y in enumerate_young(0, 3)] == [()]


@pytest.mark.parametrize("N,smax", [(1, 4), (2, 5), (3, 6), (4, 5), (5, 4)])
def test_young_matches_oracle(N, smax):
    got = [y.a for y in enumerate_young(N, smax)]
    assert sorted(got) == sorted(oracles.young(N, smax))
    assert got == sorted(got, key=lambda a: (size(YoungDiagram(a)), a))


def test_bijection_on_keys():
    for l in (1, 2, 3):
        for k in range(l + 1):
            for key in keys_up_to(l, k, 7, N_max=7):
                h = encode(key)
                assert decode(h) == key
                bd = parse_blocks(h)
                assert bd.interlacing_holds()
                assert bd.M == bd.J + 2 * sum(key.a.a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda l: st.tuples(
    st.just(l), st.integers(0, l), st.lists(st.sampled_from(range(-l, l + 1, 2)), max_size=10))))
def test_random_paths_decode_consistently(args):
    l, k, spins = args
    p = spins_to_path(SpinConfig(l, k, tuple(spins)))
    h = spectrum_of(p)
    key = decode(h)
    assert encode(key) == h
    assert energy(p) == degree(key.r) + size(key.a)


def test_fibers_example_and_ground():
    fib = fibers(3, 1, 3)
    key = SpectralKey(RestrictedPath(3, 1, (0, 1, 2, 1)), YoungDiagram((0, 1, 0)))
    assert len(fib[key]) == 6
    assert len(fib[ground_key(3, 1)]) == 2
    assert FinitePath.ground(3, 1) in fib[ground_key(3, 1)]
    assert list(fib) == sorted(fib, key=SpectralKey.sort_key)
    assert set(fib) == set(keys_up_to(3, 1, 3))


def test_key_json():
    key = SpectralKey(RestrictedPath(3, 1, (0, 1, 2, 1)), YoungDiagram((0, 1, 0)))
    assert key.to_dict() == {"N": 3, "r": [0, 1, 2, 1], "a": [0, 1, 0]}
    assert SpectralKey.from_dict(key.to_dict(), 3, 1) == key
    with pytest.raises(ValueError):
        SpectralKey.from_dict({"N": 4, "r": [0, 1, 2, 1], "a": [0, 1, 0]}, 3, 1)
    with pytest.raises(ValueError):
        SpectralKey(RestrictedPath(3, 1, (0, 1, 2, 1)), YoungDiagram((0, 1)))
