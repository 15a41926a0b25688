"""Check implementations behind the named verification suites.

Each suite function takes the experiment configuration plus a seeded
generator and returns check records and sweep tables.  Check values are
nonnegative numbers compared against a tolerance; ``mode="upper"`` passes
when the value is at most the tolerance, ``mode="lower"`` when it is at
least the tolerance (used for negative controls that must stay large).
Anchor strings tie every record to the statement it verifies so reports can
be audited against the source text.
"""

from __future__ import annotations

import numpy as np

from . import fock as fk
from . import grid as gd
from . import measure as ms
from . import noevent as ne
from . import sampling as sp
from . import semigroup as sg
from . import superop as so
from .harness_types import CheckRecord, SweepTable

SENTINEL_FLOOR = 1e-12


def make_check(config, name, value, tol, anchor, mode="upper", note=""):
    tol = float(config.tolerances.get(name, tol))
    value = float(value)
    ok = value <= tol if mode == "upper" else value >= tol
    return CheckRecord(
        name=name,
        status="pass" if ok else "fail",
        value=value,
        tol=tol,
        mode=mode,
        anchor=anchor,
        note=note,
    )


def finding(config, name, value, tol, anchor, note=""):
    """A measured, non-gating record: status 'finding' when above tolerance."""
    tol = float(config.tolerances.get(name, tol))
    value = float(value)
    return CheckRecord(
        name=name,
        status="pass" if value <= tol else "finding",
        value=value,
        tol=tol,
        mode="upper",
        anchor=anchor,
        note=note,
    )


def _ratio_rows(params, errors):
    rows = []
    for i, (p, e) in enumerate(zip(params, errors)):
        ratio = errors[i - 1] / e if i and e > 0 else None
        rows.append((float(p), float(e), None if ratio is None else float(ratio)))
    return rows


def make_sweep_table(target, label, params, errors, threshold=1.7,
                     sentinel_floor=SENTINEL_FLOOR, require="ratios"):
    """Build a sweep table; errors at the rounding floor short-circuit to pass."""
    rows = _ratio_rows(params, errors)
    sentinel = all(e <= sentinel_floor for e in errors)
    if sentinel:
        status = "pass"
    elif require == "ratios":
        ratios = [r for _, _, r in rows[1:]]
        status = "pass" if ratios and all(r is not None and r >= threshold for r in ratios) else "fail"
    elif require == "monotone_floor":
        monotone = all(errors[i + 1] <= errors[i] * (1 + 1e-9) + 1e-15
                       for i in range(len(errors) - 1))
        status = "pass" if monotone and errors[-1] <= threshold else "fail"
    else:
        raise ValueError(f"unknown sweep requirement {require!r}")
    return SweepTable(
        target=target,
        label=label,
        rows=rows,
        threshold=float(threshold),
        sentinel=sentinel,
        status=status,
    )


def _refined(config, level):
    m0 = config.grid_points
    M = m0 * 2**level
    if M > 64:
        raise ValueError("refinement level needs more than 64 modes")
    spec = gd.GridSpec(M, config.x_max / M)
    return spec, M


def _space_for(M, cap):
    return fk.FockSpace(M) if M <= 12 else fk.FockSpace(M, particle_cap=cap)


def _smooth_case(spec, keepout_frac=0.0):
    """Single-particle state and monomial from fixed smooth bumps.

    ``keepout_frac`` shrinks the monomial supports toward the origin so that
    forward shifts up to that fraction of the domain stay on the grid.
    """
    xm = spec.x_max
    f = gd.make_test_function(spec, "bump_D_d", center=0.15 * xm, width=0.30 * xm)
    g = gd.make_test_function(spec, "bump_D_d", center=0.35 * xm, width=0.30 * xm)
    top = 1.0 - keepout_frac
    h = gd.make_test_function(spec, "bump_D_dstar", center=0.40 * xm * top,
                              width=0.35 * xm * top)
    e = gd.make_test_function(spec, "bump_D_dstar", center=0.30 * xm * top,
                              width=0.25 * xm * top)
    return sg.RankOneState([f], [g]), sg.MonomialObservable([h], [e])


# ----------------------------------------------------------------- car_algebra


def suite_car_algebra(config, rng):
    spec = config.grid_spec()
    space = fk.FockSpace(config.grid_points)
    M, dim = space.num_modes, space.dim
    eye = np.eye(dim)
    checks = []

    ann = [fk.mode_matrix(space, k, "annihilate") for k in range(M)]
    cre = [fk.mode_matrix(space, k, "create") for k in range(M)]

    worst = 0.0
    for j in range(M):
        for k in range(M):
            worst = max(worst, np.max(np.abs(ann[j] @ ann[k] + ann[k] @ ann[j])))
            worst = max(worst, np.max(np.abs(cre[j] @ cre[k] + cre[k] @ cre[j])))
            target = eye if j == k else 0.0
            worst = max(
                worst, np.max(np.abs(ann[j] @ cre[k] + cre[k] @ ann[j] - target))
            )
    checks.append(make_check(config, "car_anticommutation", worst, 1e-10,
                             "ladder relations (Sec. 5)"))

    worst = max(np.max(np.abs(cre[k] - ann[k].conj().T)) for k in range(M))
    checks.append(make_check(config, "ladder_adjointness", worst, 1e-14,
                             "ladder relations (Sec. 5)"))

    worst = max(
        max(np.max(np.abs(ann[k] @ ann[k])), np.max(np.abs(cre[k] @ cre[k])))
        for k in range(M)
    )
    checks.append(make_check(config, "ladder_squares", worst, 1e-14,
                             "(a_k)^2 = (a_k+)^2 = 0 (Sec. 5)"))

    vac = space.vacuum()
    worst = max(np.max(np.abs(ann[k] @ vac)) for k in range(M))
    for k in range(M):
        worst = max(worst, np.max(np.abs(cre[k] @ vac - space.basis_state([k]))))
    checks.append(make_check(config, "vacuum_rules", worst, 1e-15,
                             "a_k|0> = 0, a_k+|0> = |k> (Sec. 5)"))

    worst = 0.0
    for _ in range(50):
        f = sp.random_grid_function(rng, spec, normalize=False)
        a = fk.ladder_matrix(space, f, "annihilate")
        sv = np.linalg.svd(a, compute_uv=False)[0]
        worst = max(worst, abs(sv - gd.norm(f)))
    checks.append(make_check(config, "function_ladder_norm", worst, 1e-10,
                             "|a(f)| = |f| (Sec. 5)"))

    worst = 0.0
    for _ in range(20):
        f = sp.random_grid_function(rng, spec)
        g = sp.random_grid_function(rng, spec)
        af = fk.ladder_matrix(space, f, "annihilate")
        ag = fk.ladder_matrix(space, g, "annihilate")
        cg = fk.ladder_matrix(space, g, "create")
        worst = max(worst, np.max(np.abs(af @ cg + cg @ af - gd.inner_product(f, g) * eye)))
        worst = max(worst, np.max(np.abs(af @ ag + ag @ af)))
    checks.append(make_check(config, "function_anticommutators", worst, 1e-13,
                             "a(f)a+(g) + a+(g)a(f) = <f,g>I (Sec. 5)"))

    worst = 0.0
    for _ in range(10):
        fs = [sp.random_grid_function(rng, spec) for _ in range(3)]
        w = fk.wedge_vector(space, fs)
        swapped = fk.wedge_vector(space, [fs[1], fs[0], fs[2]])
        worst = max(worst, np.max(np.abs(w + swapped)))
        worst = max(worst, np.max(np.abs(fk.wedge_vector(space, [fs[0], fs[0]]))))
    checks.append(make_check(config, "wedge_antisymmetry", worst, 1e-13,
                             "f^g = -g^f (Sec. 5)"))

    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        fs = [sp.random_grid_function(rng, spec) for _ in range(n)]
        gs = [sp.random_grid_function(rng, spec) for _ in range(n)]
        det = fk.gram_determinant(fs, gs)
        wf = fk.wedge_vector(space, fs)
        wg = fk.wedge_vector(space, gs)
        worst = max(worst, abs(np.vdot(wf, wg) - det) / max(1.0, abs(det)))
    checks.append(make_check(config, "determinant_identity", worst, 1e-12,
                             "<f|g> = det<f_j|g_k> (Sec. 5)"))

    from math import factorial

    worst = 0.0
    for n in (1, 2, 3, 4):
        fs = [sp.random_grid_function(rng, spec) for _ in range(n)]
        oracle = fk.antisymmetrize_oracle(space, fs)
        wedge = fk.wedge_vector(space, fs)
        worst = max(worst, np.max(np.abs(oracle - wedge / factorial(n))))
    checks.append(make_check(config, "antisymmetrizer_ratio", worst, 1e-12,
                             "P_a projection vs wedge (Sec. 5)",
                             note="ratio pinned to 1/n! on n = 1, 2"))

    small = fk.FockSpace(min(M, 6))
    worst = 0.0
    for _ in range(5):
        V = sp.random_contraction(rng, small.num_modes)
        W = sp.random_contraction(rng, small.num_modes)
        lhs = fk.gamma_lift(small, V) @ fk.gamma_lift(small, W)
        worst = max(worst, np.max(np.abs(lhs - fk.gamma_lift(small, V @ W))))
    checks.append(make_check(config, "gamma_multiplicative", worst, 1e-12,
                             "lift of products (Eq. 8)"))

    worst = 0.0
    for m in range(M + 1):
        Sm = gd.shift_matrix(spec, m)
        worst = max(worst, np.max(np.abs(fk.gamma_lift(space, Sm)
                                         - fk.fock_shift_matrix(space, m))))
    checks.append(make_check(config, "gamma_shift_exact", worst, 1e-15,
                             "lifted shift acts by index translation (Eq. 8)"))

    m = 2
    worst = 0.0
    for _ in range(10):
        fs = [sp.random_grid_function(rng, spec, keepout=m) for _ in range(2)]
        w = fk.wedge_vector(space, fs)
        sw = fk.shift_fock_vector(space, m, w)
        worst = max(worst, abs(np.vdot(sw, sw) - np.vdot(w, w)))
    checks.append(make_check(config, "gamma_isometry_supported", worst, 1e-12,
                             "isometry away from the shifted-off region (Eq. 8)"))

    worst = np.max(np.abs(fk.derivation_lift(space, np.eye(M))
                          - fk.number_operator(space)))
    checks.append(make_check(config, "derivation_number", worst, 1e-14,
                             "additive lift of identity = particle number (Prop. 2)"))

    worst = 0.0
    for _ in range(5):
        A = sp.random_hermitian(rng, M) + 1j * sp.random_hermitian(rng, M)
        f = sp.random_grid_function(rng, spec)
        g = sp.random_grid_function(rng, spec)
        lhs = fk.derivation_lift(space, A) @ fk.wedge_vector(space, [f, g])
        rhs = fk.derivation_wedge_sum(space, A, [f, g])
        worst = max(worst, np.max(np.abs(lhs - rhs)))
        one = fk.derivation_lift(space, A) @ fk.wedge_vector(space, [f])
        direct = fk.wedge_vector(space, [f.with_values(A @ f.values)])
        worst = max(worst, np.max(np.abs(one - direct)))
    checks.append(make_check(config, "derivation_leibniz", worst, 1e-13,
                             "Leibniz action on wedges (Eq. 9)"))

    q = fk.number_operator(space)
    assembled = sum(cre[k] @ ann[k] for k in range(M))
    checks.append(make_check(config, "number_from_ladders",
                             np.max(np.abs(q - assembled)), 1e-14,
                             "Q = sum a_k+ a_k (Prop. 2)"))

    vac_proj = np.outer(vac, vac.conj())
    checks.append(make_check(config, "xi_vacuum_zero",
                             np.max(np.abs(fk.xi_star(space, vac_proj))), 1e-15,
                             "mode sandwich kills the vacuum (Eq. 7)"))

    worst = 0.0
    for n in (1, 2, 3):
        modes = list(rng.choice(M, size=n, replace=False))
        v = space.basis_state(modes)
        out = fk.xi_star(space, np.outer(v, v.conj()))
        worst = max(worst, abs(np.trace(out).real - n))
    checks.append(make_check(config, "xi_particle_trace", worst, 1e-12,
                             "trace of sandwich on n-particle state = n (Prop. 2)"))

    worst = 0.0
    for _ in range(5):
        rho = sp.random_positive_operator(rng, dim)
        lhs = np.trace(fk.xi_star(space, rho))
        rhs = np.trace(q @ rho)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    checks.append(make_check(config, "xi_vs_number_trace", worst, 1e-12,
                             "Tr Xi(rho) = Tr(Q rho) (Prop. 2)"))

    rho = sp.random_positive_operator(rng, dim)
    explicit = sum(ann[k] @ rho @ cre[k] for k in range(M))
    checks.append(make_check(config, "xi_kraus_form",
                             np.max(np.abs(fk.xi_star(space, rho) - explicit)), 1e-13,
                             "explicit mode Kraus list (Prop. 2)"))

    small4 = fk.FockSpace(4)
    xi_superop = so.kraus_to_superop(
        [fk.mode_matrix(small4, k, "annihilate") for k in range(4)]
    )
    checks.append(make_check(config, "xi_choi_psd",
                             max(0.0, -so.choi_min_eig(xi_superop)), 1e-10,
                             "complete positivity of the sandwich (Prop. 2)"))
    return checks, []


# -------------------------------------------------------------------- theorem1


def suite_theorem1(config, rng):
    spec = config.grid_spec()
    space = fk.FockSpace(config.grid_points)
    checks = []

    # grid-level backing identities
    worst = 0.0
    for _ in range(100):
        f = sp.random_grid_function(rng, spec, normalize=False)
        g = sp.random_grid_function(rng, spec, normalize=False)
        worst = max(worst, abs(gd.ibp_residual(f, g)) / (gd.norm(f) * gd.norm(g)))
    checks.append(make_check(config, "ibp_random", worst, 1e-13,
                             "summation by parts backing the proof of Thm. 1"))

    worst = 0.0
    for m in (1, 2, 3):
        f = sp.random_grid_function(rng, spec)
        g = sp.random_grid_function(rng, spec)
        worst = max(worst, abs(gd.inner_product(gd.shift_forward(f, m), g)
                               - gd.inner_product(f, gd.shift_adjoint(g, m))))
    checks.append(make_check(config, "shift_adjoint_pairing", worst, 1e-14,
                             "shift vs conjugate shift (Sec. 6)"))

    f = sp.random_grid_function(rng, spec)
    worst = 0.0
    for a, b in ((1, 2), (0, 3), (2, 2)):
        lhs = gd.shift_forward(gd.shift_forward(f, a), b)
        worst = max(worst, np.max(np.abs(lhs.values - gd.shift_forward(f, a + b).values)))
    checks.append(make_check(config, "shift_semigroup_law", worst, 0.0,
                             "S_t S_s = S_{t+s} (Sec. 6)"))

    errs = []
    for M in (32, 64, 128):
        rspec = gd.GridSpec(M, config.x_max / M)
        x = rspec.nodes
        X = rspec.x_max
        smooth = gd.GridFunction(rspec, (x * (X - x)) ** 2 + 0j)
        deriv = 2 * x * (X - x) ** 2 - 2 * x**2 * (X - x)
        err = np.max(np.abs(gd.diff_forward(smooth).values[:-1] - deriv[:-1]))
        err = max(err, np.max(np.abs(
            gd.diff_backward_interior(smooth).values[1:] - deriv[1:])))
        errs.append(err)
    ratio = min(errs[i] / errs[i + 1] for i in range(2))
    checks.append(make_check(config, "diff_consistency_order", ratio, 1.8,
                             "discrete derivative consistency (Sec. 6)", mode="lower"))

    # the 200-case duality identity suite
    worst = 0.0
    floor_scale = []
    for _ in range(200):
        n = int(rng.integers(1, 3))
        p = int(rng.integers(0, 3))
        q = int(rng.integers(0, 3))
        state = sp.random_rank_one(rng, spec, n)
        mono = sp.random_monomial(rng, spec, p, q)
        r, scale = sg.generator_duality_residual(space, state, mono)
        rel = abs(r) / scale if scale > 0 else abs(r)
        worst = max(worst, rel)
        if scale > 0:
            floor_scale.append(rel)
    floor = max(worst, 1e-16)
    checks.append(make_check(config, "duality_residual_200", worst, 1e-10,
                             "Thm. 1 (exact difference pairing)"))

    worst_low = np.inf
    for _ in range(20):
        state = sp.random_rank_one(rng, spec, 1)
        bad = sg.MonomialObservable(
            [sp.random_grid_function(rng, spec, dstar=False)],
            [sp.random_grid_function(rng, spec, dstar=True)],
        )
        r, scale = sg.generator_duality_residual(space, state, bad,
                                                 enforce_domains=False)
        if scale > 0:
            worst_low = min(worst_low, abs(r) / scale)
    checks.append(make_check(config, "duality_negative_origin", worst_low,
                             100 * floor, "Thm. 1 boundary hypothesis necessity",
                             mode="lower",
                             note="monomial argument nonzero at the origin"))

    raised = 0
    try:
        sg.generator_duality_residual(space, sp.random_rank_one(rng, spec, 1),
                                      sg.MonomialObservable(
                                          [sp.random_grid_function(rng, spec)], []))
    except sg.DomainError:
        raised = 1
    checks.append(make_check(config, "domain_refusal", raised, 1,
                             "Thm. 1 domain tags enforced", mode="lower"))

    # boundary perturbation structure
    state = sp.random_rank_one(rng, spec, 2)
    delta = sg.boundary_perturbation(space, state)
    delta_swapped = sg.boundary_perturbation(
        space, sg.RankOneState(state.bras, state.kets))
    checks.append(make_check(config, "delta_star_map",
                             np.max(np.abs(delta.conj().T - delta_swapped)), 1e-14,
                             "Delta is a *-map (Eq. 13)"))

    fs = [sp.random_grid_function(rng, spec) for _ in range(2)]
    dpos = sg.boundary_perturbation(space, sg.RankOneState(fs, fs))
    weig = np.linalg.eigvalsh(0.5 * (dpos + dpos.conj().T))[0]
    checks.append(make_check(config, "delta_positivity_transfer",
                             max(0.0, -weig), 1e-12,
                             "Delta positive on |f><f| (Eq. 13)"))

    f1 = sp.random_grid_function(rng, spec)
    g1 = sp.random_grid_function(rng, spec)
    vac = space.vacuum()
    expected = f1.values[0] * np.conj(g1.values[0]) * np.outer(vac, vac.conj())
    got = sg.boundary_perturbation(space, sg.RankOneState([f1], [g1]))
    checks.append(make_check(config, "delta_rank_one_formula",
                             np.max(np.abs(got - expected)), 1e-14,
                             "single-slot case of Eq. (13)"))

    checks.append(make_check(
        config, "generator_vacuum",
        np.max(np.abs(sg.generator_action(space, sg.RankOneState([], [])))), 0.0,
        "generator vanishes on the vacuum state (Sec. 6)"))

    # generator consistency with the one-step semigroup derivative
    errs = []
    for level in range(1, 4):
        rspec, M = _refined(config, level)
        rspace = _space_for(M, cap=2)
        st, mono = _smooth_case(rspec)
        kf = fk.wedge_vector(rspace, st.kets)
        kg = fk.wedge_vector(rspace, st.bras)
        x_kf = sg.flow_apply(rspace, 0, mono, kf)
        s_kf = fk.shift_fock_vector(rspace, 1, kf, adjoint=True)
        s_kg = fk.shift_fock_vector(rspace, 1, kg, adjoint=True)
        fd = (np.vdot(s_kg, sg.flow_apply(rspace, 0, mono, s_kf))
              - np.vdot(kg, x_kf)) / rspec.spacing
        D = gd.diff_forward_matrix(rspec)
        B = gd.diff_backward_matrix(rspec)
        gen = (np.vdot(kg, sg.flow_apply(rspace, 0, mono,
                                         fk.derivation_wedge_sum(rspace, D, st.kets)))
               + np.vdot(fk.derivation_wedge_sum(rspace, B, st.bras), x_kf))
        errs.append(abs(fd - gen))
    ratio = min(errs[i] / errs[i + 1] for i in range(2))
    checks.append(make_check(config, "generator_semigroup_derivative", ratio, 1.7,
                             "generator as one-step derivative (Sec. 6)",
                             mode="lower"))

    # semigroup axioms on the Heisenberg/Schrodinger pair
    worst = 0.0
    x = sp.random_hermitian(rng, space.dim)
    for (a, b) in ((1, 2), (2, 3), (0, 4)):
        lhs = sg.heisenberg_apply(space, a, sg.heisenberg_apply(space, b, x))
        worst = max(worst, np.max(np.abs(lhs - sg.heisenberg_apply(space, a + b, x))))
    checks.append(make_check(config, "semigroup_law_exact", worst, 0.0,
                             "axiom (i) (Sec. 2)"))

    worst = 0.0
    eye = np.eye(space.dim)
    for m in (1, 3, 5):
        phi_id = sg.heisenberg_apply(space, m, eye)
        worst = max(worst, max(0.0, np.linalg.eigvalsh(phi_id)[-1] - 1.0))
    checks.append(make_check(config, "subunital", worst, 1e-12,
                             "axiom (ii): Phi_t(I) <= I (Sec. 2)"))

    worst = 0.0
    rho = sp.random_positive_operator(rng, space.dim)
    for m in (1, 2, 4):
        lhs = np.trace(sg.schrodinger_apply(space, m, rho) @ x)
        rhs = np.trace(rho @ sg.heisenberg_apply(space, m, x))
        worst = max(worst, abs(lhs - rhs) / (abs(rhs) + 1))
        tr = np.trace(sg.schrodinger_apply(space, m, rho)).real
        worst = max(worst, max(0.0, tr - np.trace(rho).real - 1e-15))
    checks.append(make_check(config, "duality_and_trace", worst, 1e-13,
                             "preadjoint pairing and trace bound (Sec. 2)"))

    space4 = fk.FockSpace(4)
    worst = 0.0
    for m in range(5):
        worst = max(worst, max(0.0, -so.choi_min_eig(so.shift_superop(space4, m))))
    checks.append(make_check(config, "semigroup_choi_psd", worst, 1e-12,
                             "axiom (ii): complete positivity (Sec. 2)"))

    errs = []
    for level in range(1, 4):
        rspec, M = _refined(config, level)
        rspace = _space_for(M, cap=2)
        st, mono = _smooth_case(rspec)
        kf = fk.wedge_vector(rspace, st.kets)
        kg = fk.wedge_vector(rspace, st.bras)
        base = np.vdot(kg, sg.flow_apply(rspace, 0, mono, kf))
        s_kf = fk.shift_fock_vector(rspace, 1, kf, adjoint=True)
        s_kg = fk.shift_fock_vector(rspace, 1, kg, adjoint=True)
        stepped = np.vdot(s_kg, sg.flow_apply(rspace, 0, mono, s_kf))
        errs.append(abs(stepped - base))
    ratio = min(errs[i] / errs[i + 1] for i in range(2))
    checks.append(make_check(config, "weak_continuity_surrogate", ratio, 1.7,
                             "axiom (iii) surrogate: one-step pairing gap (Sec. 2)",
                             mode="lower"))

    # flow of shifts behavior
    eyecheck = np.max(np.abs(sg.flow_of_shifts(space, 3, sg.MonomialObservable())
                             - np.eye(space.dim)))
    checks.append(make_check(config, "flow_unital", eyecheck, 0.0,
                             "unital endomorphisms (Eq. 12)"))

    m = 2
    fa = sp.random_grid_function(rng, spec, dstar=True, keepout=m)
    fb = sp.random_grid_function(rng, spec, dstar=True, keepout=m)
    left = sg.MonomialObservable([fa], [])
    right = sg.MonomialObservable([], [fb])
    both = sg.MonomialObservable([fa], [fb])
    lhs = sg.flow_of_shifts(space, m, both)
    rhs = sg.flow_of_shifts(space, m, left) @ sg.flow_of_shifts(space, m, right)
    checks.append(make_check(config, "flow_multiplicative", np.max(np.abs(lhs - rhs)),
                             1e-12, "endomorphism property (Eq. 12)"))

    m = 2
    worst = 0.0
    for _ in range(5):
        vals = np.zeros(spec.num_points, dtype=complex)
        lo = m + 1
        hi = spec.num_points - gd.trailing_zero_cells(spec)
        vals[lo:hi] = rng.standard_normal(hi - lo) + 1j * rng.standard_normal(hi - lo)
        f_hi = gd.GridFunction(spec, vals)
        vals2 = np.zeros_like(vals)
        vals2[lo:hi] = rng.standard_normal(hi - lo) + 1j * rng.standard_normal(hi - lo)
        g_hi = gd.GridFunction(spec, vals2)
        st = sg.RankOneState([f_hi], [g_hi])
        mono = sp.random_monomial(rng, spec, 1, 1, keepout=m)
        rho = st.as_operator(space)
        direct = np.trace(rho @ sg.flow_of_shifts(space, m, mono))
        dual = np.trace(st.shifted_adjoint(m).as_operator(space)
                        @ sg.flow_of_shifts(space, 0, mono))
        worst = max(worst, abs(direct - dual) / (abs(direct) + abs(dual) + 1e-30))
    checks.append(make_check(config, "flow_state_duality", worst, 1e-12,
                             "monomial action vs shifted state (Eq. 12)"))

    sweeps = [_theorem1_sweep(config, levels=min(config.h_levels, 4))]
    return checks, sweeps


def _theorem1_sweep(config, levels):
    errs_exact, errs_naive, params = [], [], []
    for level in range(levels):
        rspec, M = _refined(config, level)
        rspace = _space_for(M, cap=4)
        st, mono = _smooth_case(rspec)
        r, s = sg.generator_duality_residual(rspace, st, mono, scheme="naive_forward")
        errs_naive.append(abs(r) / s)
        r, s = sg.generator_duality_residual(rspace, st, mono, scheme="exact_pair")
        errs_exact.append(abs(r) / max(s, 1e-300))
        params.append(rspec.spacing)
    exact_table = make_sweep_table("theorem1_h", "exact difference pairing",
                                   params, errs_exact)
    naive_table = make_sweep_table("theorem1_h", "naive same-side differences",
                                   params, errs_naive)
    return [exact_table, naive_table]


# --------------------------------------------------------------------- measure


def suite_measure(config, rng):
    spec = config.grid_spec()
    space = fk.FockSpace(config.grid_points)
    M = space.num_modes
    checks = []

    f = sp.random_grid_function(rng, spec)
    checks.append(make_check(
        config, "bin_vacuum_zero",
        np.max(np.abs(ms.measure_apply(space, ms.TimeBin(0, 4),
                                       sg.RankOneState([], [f])))), 0.0,
        "vacuum patterns map to zero (Eq. 20)"))
    checks.append(make_check(
        config, "bin_empty_zero",
        np.max(np.abs(ms.measure_apply(space, ms.TimeBin(3, 3),
                                       sg.RankOneState([f], [f])))), 0.0,
        "empty bin (Eq. 20)"))

    T = M - 2
    out = ms.measure_apply(space, ms.TimeBin(0, T), sg.RankOneState([f], [f]))
    expect = spec.spacing * float(np.sum(np.abs(f.values[:T]) ** 2))
    checks.append(make_check(config, "bin_trace_formula",
                             abs(np.trace(out).real - expect), 1e-13,
                             "single-slot trace of Eq. (20)"))

    st = sp.random_rank_one(rng, spec, 2)
    x = sp.random_hermitian(rng, space.dim)
    pa = ms.measure_pairing(space, ms.TimeBin(0, 3), st, x)
    pb = ms.measure_pairing(space, ms.TimeBin(3, M - 1), st, x)
    pc = ms.measure_pairing(space, ms.TimeBin(0, M - 1), st, x)
    checks.append(make_check(config, "sigma_additivity",
                             abs(pa + pb - pc) / (abs(pa) + abs(pb) + abs(pc) + 1e-30),
                             1e-13, "axiom (iii) additivity (Sec. 3)"))

    dense = ms.measure_apply(space, ms.TimeBin(1, 5), st)
    pair = ms.measure_pairing(space, ms.TimeBin(1, 5), st, x)
    checks.append(make_check(config, "pairing_vs_dense",
                             abs(np.trace(dense @ x) - pair) / (abs(pair) + 1e-30),
                             1e-11, "pairing definition (Sec. 3)"))

    fpos = sp.random_grid_function(rng, spec)
    stpos = sg.RankOneState([fpos], [fpos])
    vals = [ms.measure_pairing(space, ms.TimeBin(0, k), stpos,
                               np.eye(space.dim, dtype=complex)).real
            for k in range(0, M - 1)]
    worst = max(max(0.0, vals[i] - vals[i + 1]) for i in range(len(vals) - 1))
    checks.append(make_check(config, "bin_refinement_monotone", worst, 1e-15,
                             "nonnegative node masses (Eq. 20)"))

    worst = 0.0
    for r in (1, 2, 3):
        st2 = sp.random_rank_one(rng, spec, 2, keepout=r)
        res, scale = ms.covariance_residual(space, r, ms.TimeBin(1, 3), st2)
        worst = max(worst, res / max(scale, 1e-30))
        hres, hscale = ms.heisenberg_covariance_residual(
            space, r, ms.TimeBin(1, 3), st2, x)
        worst = max(worst, hres / max(hscale, 1e-30))
    checks.append(make_check(config, "covariance_residual", worst, 1e-12,
                             "covariance (Eqs. 2/5)"))

    res0, _ = ms.covariance_residual(space, 0, ms.TimeBin(1, 3), st)
    checks.append(make_check(config, "covariance_r0", res0, 1e-14,
                             "covariance at zero shift (Eqs. 2/5)"))

    width = M - 2
    mb = ms.kraus_bin(space, spec, ms.TimeBin(0, width), width)
    target = ms.measure_apply(space, ms.TimeBin(0, width), st)
    checks.append(make_check(config, "kraus_matches_quadrature_finest",
                             np.max(np.abs(mb.apply_state(space, st) - target)),
                             1e-12, "finest chunking equals Eq. (20) (Eqs. 22-24)"))

    vac = space.vacuum()
    checks.append(make_check(
        config, "kraus_vacuum_zero",
        np.max(np.abs(mb.apply_operator(np.outer(vac, vac.conj())))), 1e-15,
        "chunk annihilators kill the vacuum (Prop. 4)"))

    worst = 0.0
    single_dev = 0.0
    for (lo, hi) in ((0, M), (0, M // 2), (2, M - 2)):
        width_cells = hi - lo
        for n in (1, 2, 4):
            if width_cells % n:
                continue
            lam = ms.kraus_weight_norm(space, spec, ms.TimeBin(lo, hi), n)
            w = width_cells * spec.spacing
            worst = max(worst, lam / w - 1.0)
            if n == 1:
                single_dev = max(single_dev, abs(lam - w))
    checks.append(make_check(config, "kraus_weight_bound", max(0.0, worst), 1e-12,
                             "Q_n < (s-t)I (Prop. 4)"))
    checks.append(make_check(config, "kraus_weight_single_chunk", single_dev, 1e-12,
                             "|a+(chi)a(chi)| = chunk width (Prop. 4)"))
    checks.append(make_check(
        config, "kraus_weight_zero_bin",
        ms.kraus_weight_norm(space, spec, ms.TimeBin(2, 2), 1), 0.0,
        "zero-width bin (Prop. 4)"))

    worst = 0.0
    bin_full = ms.kraus_bin(space, spec, ms.TimeBin(0, M), 4)
    for _ in range(10):
        rho = sp.random_positive_operator(rng, space.dim)
        out_tr = np.trace(bin_full.apply_operator(rho)).real
        worst = max(worst, out_tr / np.trace(rho).real - 1.0)
    qn = sum(w.conj().T @ w for w in bin_full.kraus)
    worst = max(worst, np.linalg.eigvalsh(0.5 * (qn + qn.conj().T))[-1] - 1.0)
    checks.append(make_check(config, "bin_trace_nonincrease", max(0.0, worst), 1e-10,
                             "chunk sum never increases the trace (Prop. 4)"))

    space4 = fk.FockSpace(4)
    spec4 = gd.GridSpec(4, config.x_max / 4)
    worst = 0.0
    subunital = 0.0
    for (lo, hi) in ((0, 2), (1, 3), (0, 4)):
        sup = so.measure_superop(space4, spec4, ms.TimeBin(lo, hi))
        worst = max(worst, -so.choi_min_eig(sup))
        mh = so.trace_dual(sup)
        mi = so.superop_apply(mh, np.eye(space4.dim, dtype=complex))
        subunital = max(subunital, np.linalg.eigvalsh(0.5 * (mi + mi.conj().T))[-1] - 1.0)
    checks.append(make_check(config, "bin_choi_psd", max(0.0, worst), 1e-10,
                             "bins are completely positive (Sec. 3 (i))"))
    checks.append(make_check(config, "bin_heisenberg_subunital",
                             max(0.0, subunital), 1e-10,
                             "M([t,s))(I) <= I (Sec. 3 (ii))"))

    st_smooth, _ = _smooth_case(spec)
    checks.append(make_check(config, "small_time_first_node_exact",
                             ms.small_time_residual(space, st_smooth, 1), 1e-13,
                             "normalized small-time limit at one node (Eq. 21)"))

    sweeps = [
        _kraus_sweep(config),
        _small_time_sweep(config, levels=min(config.h_levels, 3), start_level=1),
    ]
    return checks, sweeps


def _kraus_sweep(config):
    M = 64
    spec = gd.GridSpec(M, config.x_max / M)
    space = fk.FockSpace(M, particle_cap=2)
    xm = spec.x_max
    f = gd.make_test_function(spec, "bump_D_d", center=0.15 * xm, width=0.4 * xm)
    g = gd.make_test_function(spec, "bump_D_d", center=0.25 * xm, width=0.45 * xm)
    state = sg.RankOneState([f, gd.make_test_function(
        spec, "bump_D_d", center=0.4 * xm, width=0.3 * xm)],
        [g, gd.make_test_function(spec, "bump_D_d", center=0.5 * xm, width=0.3 * xm)])
    tbin = ms.TimeBin(0, M)
    target = ms.measure_apply(space, tbin, state)
    errors, params = [], []
    for n in config.kraus_ns:
        approx = ms.kraus_apply_state(space, spec, tbin, int(n), state)
        errors.append(ms.trace_norm(approx - target))
        params.append(float(n))
    return [make_sweep_table("kraus_n", "chunk refinement vs quadrature",
                             params, errors)]


def _small_time_sweep(config, levels, start_level=1):
    errors, params = [], []
    nodes = 4
    for level in range(start_level, start_level + levels):
        rspec, M = _refined(config, level)
        rspace = _space_for(M, cap=1 if M > 12 else None)
        xm = rspec.x_max
        state = sg.RankOneState(
            [gd.make_test_function(rspec, "bump_D_d", center=0.2 * xm, width=0.4 * xm),
             gd.make_test_function(rspec, "bump_D_d", center=0.45 * xm, width=0.3 * xm)],
            [gd.make_test_function(rspec, "bump_D_d", center=0.3 * xm, width=0.4 * xm),
             gd.make_test_function(rspec, "bump_D_d", center=0.5 * xm, width=0.35 * xm)])
        errors.append(ms.small_time_residual(rspace, state, nodes))
        params.append(nodes * rspec.spacing)
    return [make_sweep_table("mera_t", "normalized initial bin vs boundary map",
                             params, errors)]


# ---------------------------------------------------------------------- picard


def suite_picard(config, rng):
    spec = gd.GridSpec(4, config.x_max / 4)
    space = fk.FockSpace(4)
    horizon = 4
    checks = []

    zero_bins = [np.zeros((space.dim ** 2, space.dim ** 2), dtype=complex)
                 for _ in range(horizon)]
    run0 = so.picard_run(space, spec, horizon, 3, "convolution",
                         measure_superops=zero_bins)
    worst = max(np.max(np.abs(run0.iterates[t] - so.shift_superop(space, t)))
                for t in range(horizon + 1))
    checks.append(make_check(config, "zero_measure_fixed_point", worst, 1e-14,
                             "free semigroup is the unperturbed solution (Prop. 1)"))

    runs = {}
    for variant in ("convolution", "paper_literal"):
        run = so.picard_run(space, spec, horizon, config.picard_steps, variant)
        runs[variant] = run
        worst_mono = max(0.0, -min(min(step) for step in run.monotone_eigs))
        worst_unit = max(0.0, -min(min(step) for step in run.unit_slacks))
        checks.append(make_check(config, f"monotone_certificates_{variant}",
                                 worst_mono, 1e-10,
                                 "iterates increase in CP order (Prop. 1)"))
        checks.append(make_check(config, f"unital_bound_{variant}", worst_unit,
                                 1e-10, "iterates stay below identity (Prop. 1)"))

    pairs = _compliant_pairs_m4(spec)
    floor = _discretization_floor_m4(space, spec, pairs)

    run = runs["convolution"]
    partial = so.picard_run(space, spec, horizon, max(2, config.picard_steps // 4),
                            "convolution")
    worst = 0.0
    for t in range(horizon + 1):
        worst = max(worst, max(0.0, -so.choi_min_eig(
            run.iterates[t] - partial.iterates[t])))
    checks.append(make_check(config, "prefix_dominated_by_limit", worst, 1e-10,
                             "every prefix sits below the limit (Prop. 1)"))

    errors = _flow_distance_by_step(space, spec, horizon, config.picard_steps,
                                    pairs)
    monotone = all(errors[i + 1] <= errors[i] + 1e-12 for i in range(len(errors) - 1))
    checks.append(make_check(config, "iteration_monotone_distance",
                             0.0 if monotone else 1.0, 0.0,
                             "distance to the shift flow never grows (Prop. 1)"))
    checks.append(make_check(config, "iteration_settles_at_flow", errors[-1],
                             max(10 * floor, 1e-9),
                             "limit matches the flow on the test set (Thm. 2)"))

    worst = 0.0
    for t in range(horizon + 1):
        for state, mono in pairs:
            x = sg.flow_of_shifts(space, 0, mono)
            rho = state.as_operator(space)
            da = np.trace(rho @ so.superop_apply(runs["convolution"].iterates[t], x))
            db = np.trace(rho @ so.superop_apply(runs["paper_literal"].iterates[t], x))
            worst = max(worst, abs(da - db))
    checks.append(finding(config, "variant_agreement", worst, max(10 * floor, 1e-9),
                          "both iteration readings on the test set (Eq. 4 vs Prop. 1)"))

    eye_s = np.eye(space.dim ** 2, dtype=complex)
    ok, eig = so.cp_dominates(eye_s, eye_s)
    checks.append(make_check(config, "cp_order_reflexive", abs(eig), 1e-12,
                             "CP order basics (Sec. 2)"))
    ok, eig = so.cp_dominates(so.shift_superop(space, 2),
                              np.zeros_like(eye_s))
    checks.append(make_check(config, "cp_order_dominates_zero",
                             0.0 if ok else 1.0, 0.0, "CP maps dominate zero (Sec. 2)"))

    d = space.dim
    kmat = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            kmat[i + d * j, j + d * i] = 1.0
    checks.append(make_check(config, "transpose_witness",
                             abs(so.choi_min_eig(kmat) + 1.0), 1e-12,
                             "transpose map is not CP (order test calibration)"))

    worst = 0.0
    rank_dev = 0.0
    for _ in range(5):
        kraus = [sp.random_contraction(rng, d) for _ in range(2)]
        s = so.kraus_to_superop(kraus)
        worst = max(worst, max(0.0, -so.choi_min_eig(s)))
        ev = np.linalg.eigvalsh(so.superop_to_choi(s))
        rank_dev = max(rank_dev, float(np.sum(ev > 1e-10) - len(kraus)))
    checks.append(make_check(config, "choi_kraus_psd", worst, 1e-12,
                             "Choi of a Kraus map is PSD (Sec. 2)"))
    checks.append(make_check(config, "choi_kraus_rank", rank_dev, 0.0,
                             "Choi rank bounded by the Kraus count (Sec. 2)"))

    ci = so.superop_to_choi(eye_s)
    ev = np.linalg.eigvalsh(ci)
    id_dev = abs(np.trace(ci).real - d) + float(np.sum(ev > 1e-9) != 1)
    checks.append(make_check(config, "choi_identity_map", id_dev, 1e-12,
                             "identity map reshuffles to a rank-one projector"))

    run_rep = so.minimality_report(space, spec, run, pairs)
    checks.append(make_check(config, "minimality_pairing_gap",
                             max(run_rep["pairing_gaps"]), max(10 * floor, 1e-9),
                             "minimal solution vs shift flow (Sec. 2 / Thm. 2)"))
    checks.append(finding(config, "minimality_choi_floor",
                          max(0.0, -min(run_rep["choi_floors"])), 1e-8,
                          "flow-minus-limit Choi floor at the truncation edge",
                          note="edge matrix units feel the right-edge truncation"))

    sweeps = [_picard_sweep(space, spec, horizon, config, pairs, floor)]
    return checks, sweeps


def _compliant_pairs_m4(spec):
    def supported(idx):
        v = np.zeros(spec.num_points, dtype=complex)
        for i, a in idx.items():
            v[i] = a
        return gd.GridFunction(spec, v)

    f = supported({1: 0.8, 2: 0.1})
    g = supported({1: 0.5 + 0.1j, 2: -0.2})
    state = sg.RankOneState([f], [g])
    pairs = []
    for hi in (2, 1):
        h1 = supported({i: 0.7 + 0.2j * i for i in range(1, hi + 1)})
        e1 = supported({i: 0.3 - 0.5j * i for i in range(1, hi + 1)})
        pairs.append((state, sg.MonomialObservable([h1], [e1])))
    pairs.append((state, sg.MonomialObservable()))
    return pairs


def _discretization_floor_m4(space, spec, pairs):
    floor = 0.0
    for m_t in range(space.num_modes + 1):
        for state, mono in pairs:
            r, _ = so.integral_equation_residual(space, m_t, state, mono,
                                                 enforce_domains=False)
            floor = max(floor, abs(r))
    return floor


def _flow_distance_by_step(space, spec, horizon, n_steps, pairs):
    flows = [so.flow_superop(space, t) for t in range(horizon + 1)]
    errors = []
    for steps in range(1, n_steps + 1):
        run = so.picard_run(space, spec, horizon, steps, "convolution")
        worst = 0.0
        for t in range(horizon + 1):
            diff = flows[t] - run.iterates[t]
            for state, mono in pairs:
                x = sg.flow_of_shifts(space, 0, mono)
                rho = state.as_operator(space)
                worst = max(worst, abs(np.trace(rho @ so.superop_apply(diff, x))))
        errors.append(worst)
    return errors


def _picard_sweep(space, spec, horizon, config, pairs, floor):
    errors = _flow_distance_by_step(space, spec, horizon,
                                    min(config.picard_steps, 8), pairs)
    params = [float(n) for n in range(1, len(errors) + 1)]
    return [make_sweep_table("picard_n", "iteration distance to the shift flow",
                             params, errors, threshold=max(10 * floor, 1e-9),
                             require="monotone_floor")]


# -------------------------------------------------------------------- theorem2


def suite_theorem2(config, rng):
    spec = config.grid_spec()
    space = fk.FockSpace(config.grid_points)
    checks = []

    st, mono = _smooth_case(spec, keepout_frac=0.25)
    r, s = so.integral_equation_residual(space, 0, st, mono)
    checks.append(make_check(config, "residual_t0_exact", abs(r), 0.0,
                             "empty integral at t = 0 (Eq. 26)"))

    worst = 0.0
    m_t = 2
    for _ in range(40):
        n = int(rng.integers(1, 3))
        p = int(rng.integers(0, 3))
        q = int(rng.integers(0, 3))
        state = sp.random_rank_one(rng, spec, n)
        mono = sp.random_monomial(rng, spec, p, q, keepout=m_t)
        r, s = so.integral_equation_residual(space, m_t, state, mono)
        worst = max(worst, abs(r) / s if s > 0 else abs(r))
    floor = max(worst, 1e-16)
    checks.append(make_check(config, "residual_compliant_floor", worst, 1e-12,
                             "Eq. (26) through the pairing of Eq. (27)",
                             note="left-endpoint pairing makes the discrete "
                                  "equation exact on compliant data"))

    worst_low = np.inf
    for _ in range(10):
        state = sp.random_rank_one(rng, spec, 1)
        mono = sp.random_monomial(rng, spec, 1, 1, keepout=m_t)
        kf = fk.wedge_vector(space, state.kets)
        kg = fk.wedge_vector(space, state.bras)
        flow_term = np.vdot(kg, sg.flow_apply(space, m_t, mono, kf))
        s_kf = fk.shift_fock_vector(space, m_t, kf, adjoint=True)
        s_kg = fk.shift_fock_vector(space, m_t, kg, adjoint=True)
        free_term = np.vdot(s_kg, sg.flow_apply(space, 0, mono, s_kf))
        gap = abs(flow_term - free_term)
        scale = abs(flow_term) + abs(free_term)
        if scale > 0:
            worst_low = min(worst_low, gap / scale)
    checks.append(make_check(config, "zero_measure_control", worst_low,
                             100 * floor, "dropping the measure breaks Eq. (26)",
                             mode="lower"))

    st_spill = sp.random_rank_one(rng, spec, 1)
    mono_spill = sp.random_monomial(rng, spec, 1, 1, keepout=0)
    r, s = so.integral_equation_residual(space, config.grid_points - 2, st_spill,
                                         mono_spill, enforce_domains=False)
    checks.append(finding(config, "spill_support_control", abs(r) / max(s, 1e-30),
                          1e-12, "Eq. (26) outside the compliant support window",
                          note="monomial support crossing the shift horizon "
                               "reintroduces a truncation defect"))

    space4 = fk.FockSpace(4)
    spec4 = gd.GridSpec(4, config.x_max / 4)
    pairs = _compliant_pairs_m4(spec4)
    floor4 = _discretization_floor_m4(space4, spec4, pairs)
    run = so.picard_run(space4, spec4, 4, config.picard_steps, "convolution")
    worst = 0.0
    for t in range(5):
        flow_s = so.flow_superop(space4, t)
        for state, mono in pairs:
            x = sg.flow_of_shifts(space4, 0, mono)
            rho = state.as_operator(space4)
            gap = abs(np.trace(rho @ so.superop_apply(
                flow_s - run.iterates[t], x)))
            worst = max(worst, gap)
    checks.append(make_check(config, "picard_limit_matches_flow", worst,
                             max(10 * floor4, 1e-9),
                             "minimal solution equals the flow within the floor "
                             "(Thm. 2)"))

    sweeps = [_theorem2_sweep(config, levels=min(config.h_levels, 4))]
    return checks, sweeps


def _theorem2_sweep(config, levels):
    errors, params = [], []
    for level in range(levels):
        rspec, M = _refined(config, level)
        rspace = _space_for(M, cap=3)
        st, mono = _smooth_case(rspec, keepout_frac=0.25)
        m_t = M // 4
        r, s = so.integral_equation_residual(rspace, m_t, st, mono)
        errors.append(abs(r) / max(s, 1e-300))
        params.append(rspec.spacing)
    return [make_sweep_table("theorem2_h", "integral-equation pairing residual",
                             params, errors)]


# -------------------------------------------------------------------- no_event


def suite_no_event(config, rng):
    checks = []

    gamma = 1.0
    K2 = np.diag([0.0, -gamma / 2]).astype(complex)
    L2 = np.zeros((2, 2), dtype=complex)
    L2[0, 1] = np.sqrt(gamma)

    refused = 0
    try:
        ne.excessive_map(K2, [L2], np.eye(2))
    except ne.SingularSylvester:
        refused = 1
    checks.append(make_check(config, "sylvester_refusal", refused, 1,
                             "singular generator directs to quadrature (Sec. 4)",
                             mode="lower"))

    theta_i = ne.excessive_map(K2, [L2], np.eye(2), method="quadrature")
    checks.append(make_check(config, "qubit_excessive_closed_form",
                             np.max(np.abs(theta_i - np.diag([0.0, 1.0]))), 1e-10,
                             "decay qubit: Theta(I) = |1><1| (Sec. 4)"))

    rho1 = np.diag([0.0, 1.0]).astype(complex)
    val = np.trace(ne.no_event_evolve(K2, np.log(4.0), rho1)).real
    checks.append(make_check(config, "qubit_decay_value", abs(val - 0.25), 1e-12,
                             "scalar exponential decay (Sec. 4)"))

    worst = 0.0
    for _ in range(5):
        psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        rho = np.outer(psi, psi.conj())
        sv = np.linalg.svd(ne.no_event_evolve(K2, 0.8, rho), compute_uv=False)
        worst = max(worst, sv[1])
    checks.append(make_check(config, "pure_state_rank_preserved", worst, 1e-12,
                             "pure states map to multiples of pure states (Sec. 4)"))

    d = 4
    H = sp.random_hermitian(rng, d)
    Ls = [0.4 * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
          for _ in range(2)]
    K = 1j * H - (sum(L.conj().T @ L for L in Ls) / 2 + 0.3 * np.eye(d))

    checks.append(make_check(config, "dissipativity",
                             max(0.0, ne.dissipativity_slack(K)), 1e-12,
                             "K + K* <= 0 (Sec. 4)"))
    checks.append(make_check(config, "admissibility",
                             max(0.0, ne.admissibility_slack(K, Ls)), 1e-12,
                             "sum L*L + K + K* <= 0 (Sec. 4)"))

    worst = 0.0
    for t in (0.1, 0.5, 1.0, 2.0):
        from scipy.linalg import expm

        worst = max(worst, np.linalg.norm(expm(t * K), 2) - 1.0)
    checks.append(make_check(config, "contraction_semigroup", max(0.0, worst),
                             1e-12, "dissipativity gives contractions (Sec. 4)"))

    worst = 0.0
    for _ in range(100):
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        lhs = sum(np.linalg.norm(L @ psi) ** 2 for L in Ls)
        rhs = -2 * np.real(np.vdot(psi, K @ psi))
        worst = max(worst, lhs - rhs)
    checks.append(make_check(config, "admissibility_vectors", max(0.0, worst),
                             1e-12, "sum |L psi|^2 <= -2 Re<psi, K psi> (Sec. 4)"))

    worst = 0.0
    tight_dev = 0.0
    K_tight = 1j * H - sum(L.conj().T @ L for L in Ls) / 2
    for _ in range(20):
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        rho = np.outer(psi, psi.conj())
        td = np.trace(ne.coupling_perturbation(Ls, psi, psi)).real
        tl = np.trace(ne.generator_apply(K, rho)).real
        worst = max(worst, td + tl)
        tl_tight = np.trace(ne.generator_apply(K_tight, rho)).real
        tight_dev = max(tight_dev, abs(td + tl_tight))
    checks.append(make_check(config, "delta_trace_condition", max(0.0, worst),
                             1e-10, "Tr Delta(rho) <= -Tr L(rho) (Sec. 2 (ii))"))
    checks.append(make_check(config, "delta_trace_tight", tight_dev, 1e-10,
                             "equality at tight admissibility (Sec. 2 (ii))"))

    zero_out = ne.coupling_perturbation([np.zeros((d, d))],
                                        rng.standard_normal(d),
                                        rng.standard_normal(d))
    checks.append(make_check(config, "coupling_zero", np.max(np.abs(zero_out)),
                             0.0, "zero couplings give zero (Sec. 4)"))

    psis = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for _ in range(3)]
    block = np.zeros((3 * d, 3 * d), dtype=complex)
    for i in range(3):
        for j in range(3):
            block[i * d:(i + 1) * d, j * d:(j + 1) * d] = ne.coupling_perturbation(
                Ls, psis[i], psis[j])
    weig = np.linalg.eigvalsh(0.5 * (block + block.conj().T))[0]
    checks.append(make_check(config, "delta_block_positive", max(0.0, -weig),
                             1e-10, "positivity transfer of Delta (Sec. 2 (i))"))

    x = sp.random_hermitian(rng, d)
    t1 = ne.excessive_map(K, Ls, x, method="lyapunov")
    t2 = ne.excessive_map(K, Ls, x, method="quadrature")
    checks.append(make_check(config, "lyapunov_vs_quadrature",
                             np.max(np.abs(t1 - t2)), 1e-8,
                             "two routes to the excessive map (Sec. 4)"))

    theta_superop = ne.apply_to_matrix_units(
        lambda e: ne.excessive_map(K, Ls, e), d)
    checks.append(make_check(config, "theta_cp",
                             max(0.0, -so.choi_min_eig(theta_superop)), 1e-10,
                             "Theta is completely positive (Sec. 4)"))

    worst = 0.0
    for t in (0.1, 0.5, 1.0, 2.0):
        diff = ne.apply_to_matrix_units(
            lambda e, tt=t: ne.excessive_map(K, Ls, e)
            - ne.heisenberg_evolve(K, tt, ne.excessive_map(K, Ls, e)), d)
        worst = max(worst, -so.choi_min_eig(diff))
    checks.append(make_check(config, "excessivity", max(0.0, worst), 1e-10,
                             "Theta above its own orbit (Sec. 2)"))

    worst = 0.0
    for (t, s) in ((0.0, 0.5), (0.3, 0.9)):
        lhs = ne.apply_to_matrix_units(
            lambda e: ne.measure_from_excessive(K, Ls, t, s, e), d)
        rhs = ne.apply_to_matrix_units(
            lambda e: ne.measure_time_integral(K, Ls, t, s, e), d)
        worst = max(worst, np.max(np.abs(lhs - rhs)))
    checks.append(make_check(config, "measure_two_constructions", worst, 1e-8,
                             "difference form equals the time integral "
                             "(Eq. 6 vs Eq. 1)"))

    x = sp.random_hermitian(rng, d)
    a = ne.measure_from_excessive(K, Ls, 0.1, 0.4, x)
    b = ne.measure_from_excessive(K, Ls, 0.4, 0.8, x)
    c = ne.measure_from_excessive(K, Ls, 0.1, 0.8, x)
    checks.append(make_check(config, "measure_additivity",
                             np.max(np.abs(a + b - c)), 1e-12,
                             "telescoping bins (Eq. 6)"))

    r = 0.35
    lhs = ne.heisenberg_evolve(K, r, ne.measure_from_excessive(K, Ls, 0.1, 0.6, x))
    rhs = ne.measure_from_excessive(K, Ls, 0.1 + r, 0.6 + r, x)
    checks.append(make_check(config, "measure_covariance",
                             np.max(np.abs(lhs - rhs)), 1e-10,
                             "covariance of the bin maps (Eq. 5)"))

    worst = 0.0
    bin_map = ne.apply_to_matrix_units(
        lambda e: ne.measure_from_excessive(K, Ls, 0.2, 0.7, e), d)
    worst = max(worst, -so.choi_min_eig(bin_map))
    checks.append(make_check(config, "measure_cp", max(0.0, worst), 1e-10,
                             "bins are completely positive (Sec. 3 (i))"))

    return checks, []
