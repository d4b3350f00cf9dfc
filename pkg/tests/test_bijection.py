import itertools

import pytest

from src.atlas import (Signature, acyclic_signature_from_weights, atlas_from_mapping, atlas_from_signature,
                       away_from_root_internal_atlas)
from src.bijection import (check_hypotheses, compatible_orientations, compatible_representatives, f_bar, f_map,
                           f_table, invert_table, is_compatible, is_tiling, phi, phi_inverse, phi_table,
                           restricted_phi, specialization_report, tiling_violation)
from src.catalog import load_entry
from src.config import config
from src.errors import InputError, VerificationError
from src.fourientation import Fourientation, parse_orientation
from src.matroid import SignedVector, VectorKind
from src.ribbon import bernardi_external_atlas
from src.selftest import check_bernardi, check_bernardi_phi

E1, E2 = frozenset({0}), frozenset({1})


@pytest.fixture(scope="module")
def theta_pair(theta):
    sigma = Signature.build(theta, VectorKind.CIRCUIT, [SignedVector((-1, 1))])
    sigma_star = Signature.build(theta, VectorKind.COCIRCUIT, [SignedVector((1, 1))])
    return sigma, sigma_star, atlas_from_signature(theta, sigma), atlas_from_signature(theta, sigma_star)


@pytest.fixture(scope="module")
def k4_pair(k4):
    sigma = acyclic_signature_from_weights(k4, [1, 2, 4, 8, 16, 32], VectorKind.CIRCUIT)
    sigma_star = acyclic_signature_from_weights(k4, [32, 16, 8, 4, 2, 1], VectorKind.COCIRCUIT)
    return sigma, sigma_star, atlas_from_signature(k4, sigma), atlas_from_signature(k4, sigma_star)


def test_f_on_theta(theta, theta_pair):
    _, _, a_ext, a_int = theta_pair
    assert str(f_map(theta, a_ext, a_int, E1)) == "++"
    assert str(f_map(theta, a_ext, a_int, E2)) == "-+"
    assert len(f_table(theta, a_ext, a_int)) == 2


def test_f_bar_on_theta(theta, theta_pair):
    _, _, a_ext, a_int = theta_pair
    result = f_bar(theta, a_ext, a_int, verify=True)
    assert result.bijective
    assert result.hypotheses.hold
    assert result.collision is None


def test_f_map_rejects_swapped_polarities(theta, theta_pair):
    _, _, a_ext, a_int = theta_pair
    with pytest.raises(InputError):
        f_map(theta, a_int, a_ext, E1)


def test_bad_pair_collides(theta, theta_pair):
    _, _, _, a_int = theta_pair
    bad = atlas_from_mapping(theta, {E1: Fourientation.parse("b+"), E2: Fourientation.parse("+b")})
    result = f_bar(theta, bad, a_int, verify=True)
    assert not result.bijective
    assert result.collision == (E1, E2)
    assert not result.hypotheses.dissecting_ext
    assert not check_hypotheses(theta, bad, a_int).hold
    with pytest.raises(VerificationError):
        phi_table(theta, bad, a_int, verify=True)


def test_phi_on_theta(theta, theta_pair):
    _, _, a_ext, a_int = theta_pair
    table = phi_table(theta, a_ext, a_int)
    assert {str(o): s for o, s in table.items()} == {
        "++": E1, "--": frozenset(), "-+": E2, "+-": frozenset({0, 1})}
    assert phi(theta, a_ext, a_int, parse_orientation("+-")) == frozenset({0, 1})
    assert phi_inverse(theta, a_ext, a_int, set()) == parse_orientation("--")
    assert is_tiling(theta, table)
    assert tiling_violation(table) is None


def test_phi_is_inverse_of_f(theta, theta_pair):
    _, _, a_ext, a_int = theta_pair
    table = phi_table(theta, a_ext, a_int)
    for b, o in f_table(theta, a_ext, a_int).items():
        assert table[o] == b


def test_invert_table_detects_collision():
    table = {parse_orientation("++"): E1, parse_orientation("--"): E1}
    with pytest.raises(VerificationError):
        invert_table(table)
    assert tiling_violation(table) is not None


def test_restricted_phi(theta, theta_pair):
    _, _, a_ext, a_int = theta_pair
    restricted, bijective, tiling = restricted_phi(theta, phi_table(theta, a_ext, a_int), {0})
    assert {k: str(v) for k, v in restricted.items()} == {frozenset(): "-o", E1: "+o"}
    assert bijective and tiling


def test_compatibility_on_theta(theta, theta_pair):
    sigma, sigma_star, _, _ = theta_pair
    assert not is_compatible(theta, parse_orientation("+-"), sigma)
    assert is_compatible(theta, parse_orientation("-+"), sigma)
    assert {str(o) for o in compatible_orientations(theta, sigma, None)} == {"++", "--", "-+"}
    assert {str(o) for o in compatible_orientations(theta, sigma, sigma_star)} == {"++", "-+"}
    assert all(compatible_representatives(theta, sigma, sigma_star).values())


def test_compatible_orientations_checks_kinds(theta, theta_pair):
    sigma, sigma_star, _, _ = theta_pair
    with pytest.raises(InputError):
        compatible_orientations(theta, sigma_star, sigma)


def test_specialization_on_theta(theta, theta_pair):
    sigma, sigma_star, _, _ = theta_pair
    assert all(specialization_report(theta, sigma, sigma_star).to_dict().values())


def test_f_bar_on_k4(k4, k4_pair):
    sigma, sigma_star, a_ext, a_int = k4_pair
    result = f_bar(k4, a_ext, a_int, verify=True)
    assert result.bijective and result.hypotheses.hold
    images = f_table(k4, a_ext, a_int).values()
    assert all(is_compatible(k4, o, sigma) and is_compatible(k4, o, sigma_star) for o in images)
    assert all(compatible_representatives(k4, sigma, sigma_star).values())


@pytest.mark.slow
def test_phi_on_k4(k4, k4_pair):
    sigma, sigma_star, a_ext, a_int = k4_pair
    table = phi_table(k4, a_ext, a_int)
    assert len(table) == 64
    assert len(set(table.values())) == 64
    assert is_tiling(k4, table)
    assert all(specialization_report(k4, sigma, sigma_star, table).to_dict().values())
    _, bijective, tiling = restricted_phi(k4, table, {0, 1, 2})
    assert bijective and tiling


def test_modified_bernardi_is_bijective(k4_entry, k4):
    ext = bernardi_external_atlas(k4_entry.ribbon_graph(), k4)
    internal = away_from_root_internal_atlas(k4, k4_entry.root_vertex)
    result = f_bar(k4, ext, internal, verify=True)
    assert result.hypotheses.hold
    assert result.bijective


def test_phi_cap(theta, theta_pair):
    _, _, a_ext, a_int = theta_pair
    saved = config.phi_cap
    object.__setattr__(config, "phi_cap", 1)
    try:
        with pytest.raises(InputError):
            phi_table(theta, a_ext, a_int)
    finally:
        object.__setattr__(config, "phi_cap", saved)


def bernardi_setup(name):
    entry = load_entry(name)
    m = entry.matroid()
    ext = bernardi_external_atlas(entry.ribbon_graph(), m)
    sigma_star = acyclic_signature_from_weights(m, [(-2) ** e for e in range(m.n)], VectorKind.COCIRCUIT)
    partners = {
        "away_from_root": away_from_root_internal_atlas(m, entry.root_vertex),
        "weights": atlas_from_signature(m, sigma_star),
    }
    return entry, m, ext, partners


@pytest.mark.parametrize("name", ["fig5", "theta", "triangle", "k4"])
def test_bernardi_f_bar_with_any_triangulating_partner(name):
    entry, m, ext, partners = bernardi_setup(name)
    for partner, internal in partners.items():
        result = f_bar(m, ext, internal, verify=True)
        assert result.hypotheses.hold, partner
        assert result.bijective, partner
    assert check_bernardi(entry, m) is None


@pytest.mark.parametrize("name", ["fig5", "theta", "triangle", pytest.param("k4", marks=pytest.mark.slow)])
def test_bernardi_phi_is_a_tiling_bijection(name):
    entry, m, ext, partners = bernardi_setup(name)
    subsets = {frozenset(c) for k in range(m.n + 1) for c in itertools.combinations(m.edges, k)}
    for partner, internal in partners.items():
        table = phi_table(m, ext, internal, verify=True)
        assert len(table) == 2 ** m.n
        assert set(table.values()) == subsets, partner
        assert is_tiling(m, table), partner
    assert check_bernardi_phi(entry, m) is None
