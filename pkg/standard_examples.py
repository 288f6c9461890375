# standard_examples.py
"""
Named Hopf algebras, Ore towers and actions used by the corpus and tests.
"""
from action import build_action
from hopf import build_hopf, group_algebra, cyclic_group_algebra
from ore import OreTower

# Permutations of {0, 1, 2} as images of 0, 1, 2
S3_ELEMENTS = {
    "1": (0, 1, 2),
    "s12": (1, 0, 2),
    "s13": (2, 1, 0),
    "s23": (0, 2, 1),
    "c123": (1, 2, 0),
    "c132": (2, 0, 1),
}

KLEIN_ELEMENTS = ("1", "a", "b", "ab")


def c2_group_algebra(domain):
    return cyclic_group_algebra(domain, 2)


def c3_group_algebra(domain):
    return cyclic_group_algebra(domain, 3)


def s3_group_algebra(domain):
    names = list(S3_ELEMENTS)
    by_permutation = {perm: name for name, perm in S3_ELEMENTS.items()}
    product = [[by_permutation[tuple(S3_ELEMENTS[a][S3_ELEMENTS[b][i]] for i in range(3))] for b in names]
               for a in names]
    return group_algebra(domain, names, product)


def klein_group_algebra(domain):
    return group_algebra(domain, KLEIN_ELEMENTS, [[a ^ b for b in range(4)] for a in range(4)])


def sweedler_h4(domain):
    """Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx."""
    one, g, x, gx = range(4)
    return build_hopf(
        domain, ["1", "g", "x", "gx"], one,
        mult=[(one, b, b, 1) for b in range(4)] + [(a, one, a, 1) for a in (g, x, gx)] + [
            (g, g, one, 1), (g, x, gx, 1), (g, gx, x, 1),
            (x, g, gx, -1), (gx, g, x, -1),
        ],
        comult=[(one, one, one, 1), (g, g, g, 1),
                (x, x, one, 1), (x, g, x, 1),
                (gx, gx, g, 1), (gx, one, gx, 1)],
        antipode=[(one, one, 1), (g, g, 1), (x, gx, -1), (gx, x, 1)],
        counit=[1, 1, 0, 0],
    )


# ---------------------------------------------------------------------------
# Towers
# ---------------------------------------------------------------------------

def polynomial_tower(domain, var_names=("x",)):
    return OreTower.build(domain, var_names)


def weyl_tower(domain):
    """A_1 with x y = y x + 1."""
    return OreTower.build(domain, ("y", "x"), {"x": {"y": "1"}})


def jordan_tower(domain):
    """Jordan plane: y x = x y + x^2."""
    return OreTower.build(domain, ("x", "y"), {"y": {"x": "x^2"}})


def heisenberg_tower(domain):
    """z central, y x = x y + z."""
    return OreTower.build(domain, ("z", "x", "y"), {"y": {"x": "z"}})


def random_affine_tower(domain, rng, levels=2):
    """
    Small random towers over a prime field: two levels with d(a) = c1*a + c0,
    or three levels with d_b = 0 and d_c affine in a, b.
    """
    p = domain.p
    coefficient = lambda: rng.randrange(p)
    if levels == 2:
        return OreTower.build(domain, ("a", "b"), {"b": {"a": f"{coefficient()}*a + {coefficient()}"}})
    if levels == 3:
        return OreTower.build(domain, ("a", "b", "c"), {"c": {
            "a": f"{coefficient()}*a + {coefficient()}*b + {coefficient()}",
            "b": f"{coefficient()}*a + {coefficient()}*b + {coefficient()}",
        }})
    raise ValueError(f"Random towers have 2 or 3 levels, not {levels}.")


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------

def trivial_action(hopf, tower):
    """Every basis element b acts as eps(b) times the identity."""
    images = {}
    for name, e in zip(hopf.basis_names, hopf.counit):
        images[name] = {var: tower.generator(var).scale(e) for var in tower.vars}
    return build_action(hopf, tower, images)


def sign_action(tower, fixed=()):
    """C_2 acting by g . v = -v on every generator not listed in `fixed`."""
    hopf = c2_group_algebra(tower.coeff_domain)
    images = {
        "1": {var: tower.generator(var) for var in tower.vars},
        "g": {var: tower.generator(var) if var in fixed else -tower.generator(var) for var in tower.vars},
    }
    return build_action(hopf, tower, images)


def weyl_sign_action(domain):
    return sign_action(weyl_tower(domain))


def klein_first_factor_action(domain):
    """C_2 x C_2 on A_1: a acts by sign, b trivially."""
    hopf = klein_group_algebra(domain)
    tower = weyl_tower(domain)
    negated = {"a", "ab"}
    images = {name: {var: -tower.generator(var) if name in negated else tower.generator(var)
                     for var in tower.vars} for name in KLEIN_ELEMENTS}
    return build_action(hopf, tower, images)


def s3_permutation_action(domain):
    """S_3 permuting the variables of the commutative ring in x1, x2, x3."""
    hopf = s3_group_algebra(domain)
    tower = polynomial_tower(domain, ("x1", "x2", "x3"))
    images = {name: {tower.vars[i]: tower.gen(perm[i]) for i in range(3)} for name, perm in S3_ELEMENTS.items()}
    return build_action(hopf, tower, images)


def perturbed_hopf(H, table, index, delta):
    """Copy of H with one table entry shifted by `delta` (a payload)."""
    D = H.domain
    tables = {"mult": H.mult, "comult": H.comult, "antipode": H.antipode, "counit": H.counit, "unit": H.unit}

    def shifted(entries, position):
        if not position:
            return D.add(entries, delta)
        return tuple(shifted(e, position[1:]) if n == position[0] else e for n, e in enumerate(entries))

    tables[table] = shifted(tables[table], tuple(index))
    return type(H)(domain=D, basis_names=H.basis_names, **tables)
