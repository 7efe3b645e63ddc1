import random
from fractions import Fraction

import pytest

from sigtensor import (
    Path,
    Tensor,
    flatten,
    flattening_lower_bound,
    gl_act,
    koszul_flatten,
    matrix_rank,
    permute_modes,
    pwl_signature,
    tensor_product,
    unflatten,
)


def basis(d, *letters):
    return Tensor.elementary([[int(j == i) for j in range(1, d + 1)] for i in letters], d)


def test_tensor_product_of_basis_vectors():
    t = tensor_product(Tensor.basis_vector(2, 1), Tensor.basis_vector(2, 2))
    assert t.order == 2 and t.dim == 2
    assert t[(1, 2)] == 1
    assert sum(1 for x in t.entries if x != 0) == 1


def test_tensor_product_unit():
    t = Tensor.from_entries(2, 2, [1, 2, 3, 4])
    assert tensor_product(Tensor.scalar(1, 2), t) == t
    assert tensor_product(t, Tensor.scalar(1, 2)) == t


def test_tensor_product_bilinearity():
    e1 = Tensor.basis_vector(2, 1)
    e2 = Tensor.basis_vector(2, 2)
    left = tensor_product(e1 + e2, e1)
    assert left == tensor_product(e1, e1) + tensor_product(e2, e1)


def test_tensor_product_dim_mismatch():
    with pytest.raises(ValueError):
        tensor_product(Tensor.basis_vector(2, 1), Tensor.basis_vector(3, 1))


def test_flatten_odd_even_two_segment_level5():
    sig = pwl_signature(Path.from_increments([[1, 0], [0, 1]]), 5)
    f = flatten(sig.level(5), rows=(1, 3, 5))
    assert len(f.matrix) == 8 and len(f.matrix[0]) == 4
    assert matrix_rank(f.matrix) == 3


def test_flatten_rank_one_tensor_any_split():
    t = Tensor.elementary([[1, 2], [3, -1], [0, 5]])
    for rows in [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3)]:
        assert flatten(t, rows).rank == 1


def test_flatten_rejects_empty_and_full():
    t = Tensor.zeros(3, 2)
    with pytest.raises(ValueError):
        flatten(t, ())
    with pytest.raises(ValueError):
        flatten(t, (1, 2, 3))


def _slow_rank(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][col] / m[rank][col]
            m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def test_flatten_rank_matches_independent_elimination():
    rng = random.Random(11)
    for _ in range(10):
        t = Tensor.from_entries(4, 2, [rng.randint(-4, 4) for _ in range(16)])
        f = flatten(t, (1, 2))
        assert matrix_rank(f.matrix) == _slow_rank(f.matrix)


def test_flatten_merge_round_trip():
    rng = random.Random(5)
    t = Tensor.from_entries(4, 3, [rng.randint(-3, 3) for _ in range(81)])
    for rows in [(1,), (2, 4), (1, 3), (1, 2, 3)]:
        assert unflatten(flatten(t, rows), t.dim) == t


def test_gl_act_identity_and_permutation():
    t = Tensor.from_entries(2, 2, [1, 2, 3, 4])
    eye = [[1, 0], [0, 1]]
    assert gl_act(eye, t) == t
    swap = [[0, 1], [1, 0]]
    e12 = tensor_product(Tensor.basis_vector(2, 1), Tensor.basis_vector(2, 2))
    e21 = tensor_product(Tensor.basis_vector(2, 2), Tensor.basis_vector(2, 1))
    assert gl_act(swap, e12) == e21


def test_gl_act_rejects_singular():
    t = Tensor.zeros(1, 2)
    with pytest.raises(ValueError):
        gl_act([[1, 1], [2, 2]], t)


def test_gl_act_composition():
    rng = random.Random(3)
    t = Tensor.from_entries(3, 2, [rng.randint(-3, 3) for _ in range(8)])
    m1 = [[1, 2], [0, 1]]
    m2 = [[1, 0], [3, 1]]
    product = [[sum(m1[i][k] * m2[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert gl_act(m1, gl_act(m2, t)) == gl_act(product, t)


def test_gl_act_diagonal_preserves_flattening_bound():
    sig = pwl_signature(Path.from_increments([[1, 0], [0, 1]]), 5)
    t = sig.level(5)
    scaled = gl_act([[2, 0], [0, Fraction(1, 3)]], t)
    assert flattening_lower_bound(scaled) == flattening_lower_bound(t)


def test_permute_modes_identity_swap_involution():
    v = Tensor.from_vector([1, 2])
    w = Tensor.from_vector([3, 5])
    vw = tensor_product(v, w)
    assert permute_modes(vw, (1, 2)) == vw
    assert permute_modes(vw, (2, 1)) == tensor_product(w, v)
    assert permute_modes(permute_modes(vw, (2, 1)), (2, 1)) == vw


def test_permute_modes_composition():
    rng = random.Random(9)
    t = Tensor.from_entries(3, 2, [rng.randint(-3, 3) for _ in range(8)])
    tau = (2, 3, 1)
    rho = (3, 1, 2)
    # acting by tau then rho equals acting by the composite j -> tau[rho[j]]
    composite = tuple(tau[rho[j] - 1] for j in range(3))
    assert permute_modes(permute_modes(t, tau), rho) == permute_modes(t, composite)


def test_permute_modes_arity_mismatch():
    t = Tensor.zeros(3, 2)
    with pytest.raises(ValueError):
        permute_modes(t, (1, 2))
    with pytest.raises(ValueError):
        permute_modes(t, (1, 1, 2))


def test_koszul_axis_path_rank_seven():
    sig = pwl_signature(Path.from_increments([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 3)
    t = sig.level(3)
    for pivot in (1, 2, 3):
        m = koszul_flatten(t, pivot)
        assert len(m) == 9 and len(m[0]) == 9
        assert matrix_rank(m) == 7


def test_koszul_elementary_tensor_rank_at_most_two():
    t = Tensor.elementary([[1, 2, 0], [0, 1, 1], [1, 1, 1]])
    assert matrix_rank(koszul_flatten(t, 1)) <= 2


def test_koszul_zero_tensor():
    m = koszul_flatten(Tensor.zeros(3, 3), 2)
    assert all(x == 0 for row in m for x in row)


def test_koszul_rejects_wrong_order():
    with pytest.raises(ValueError):
        koszul_flatten(Tensor.zeros(2, 3), 1)


def test_json_wire_format():
    from sigtensor.serialize import tensor_from_json, tensor_to_json

    t = Tensor.from_entries(2, 2, [Fraction(1, 2), 0, 3, Fraction(-7, 3)])
    blob = tensor_to_json(t)
    assert blob["entries"] == ["1/2", "0", "3", "-7/3"]
    assert tensor_from_json(blob) == t


def test_gl_act_general_invertible_preserves_flattening_bound():
    rng = random.Random(13)
    m = [[1, 2, 0], [0, 1, 1], [1, 0, 1]]  # determinant 3
    for _ in range(3):
        t = Tensor.from_entries(4, 3, [rng.randint(-2, 2) for _ in range(81)])
        assert flattening_lower_bound(gl_act(m, t)) == flattening_lower_bound(t)
