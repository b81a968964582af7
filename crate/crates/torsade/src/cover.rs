//! Covers as fundamental-group surjections and their specializations.
//!
//! A cover is a pair of surjections u: Π ↠ Γ and φ: Π ↠ G from a common
//! finite group Π, modeling an étale Galois cover of a geometrically
//! connected base through a finite quotient of its fundamental group.
//! Rational points of the base are sections of u; the fiber of the cover at
//! a section s is the torsor of the homomorphism φ∘s. Twisting the cover by
//! a target torsor ψ turns "is some specialization isomorphic to ψ" into a
//! fixed-point search, which this module runs both ways: by direct
//! enumeration of sections and through the twisted cover.

use std::fmt;
use std::sync::Arc;

use crate::error::CoverError;
use crate::gamma::{twisted_conjugate_equiv, Cocycle, GammaGroup};
use crate::group::{enumerate_homs, Elem, FiniteGroup, GroupHom, HomConstraints, Subgroup};
use crate::gset::{gamma_set_isoms, GammaSet};
use crate::report::TwistReport;
use crate::torsor::Torsor;

/// An unramified Galois-cover datum 1 → Π̄ → Π → Γ → 1 with φ: Π ↠ G.
#[derive(Clone)]
pub struct CoverSpec {
    u: GroupHom,
    phi: GroupHom,
    pi_bar: Subgroup,
    g_bar: Subgroup,
    quot: Arc<FiniteGroup>,
    v: GroupHom,
    lambda: GroupHom,
}

impl fmt::Debug for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CoverSpec(pi={}, gamma={}, g={}, gbar={})",
            self.pi().name(),
            self.gamma().name(),
            self.group().name(),
            self.g_bar.order()
        )
    }
}

impl CoverSpec {
    pub fn new(u: GroupHom, phi: GroupHom) -> Result<Self, CoverError> {
        if u.source() != phi.source() {
            return Err(CoverError::SourceMismatch);
        }
        u.require_surjective().map_err(|_| CoverError::GammaMapNotSurjective)?;
        phi.require_surjective().map_err(|_| CoverError::CoverMapNotSurjective)?;
        let pi_bar = u.kernel();
        let g_bar_members: Vec<Elem> =
            pi_bar.members().iter().map(|&p| phi.apply(p)).collect();
        let g = phi.target().clone();
        let g_bar = g.subgroup(&{
            let mut m = g_bar_members;
            m.sort_unstable();
            m.dedup();
            m
        })?;
        g_bar.require_normal()?;
        let (quot, v) = g.quotient(&g_bar)?;
        // Λ: Γ → G/Ḡ through any u-preimage; the loop below proves the
        // square v∘φ = Λ∘u commutes, hence well-definedness
        let mut lambda_map = vec![usize::MAX; u.target().order()];
        for p in u.source().elements() {
            let gamma = u.apply(p);
            let val = v.apply(phi.apply(p));
            if lambda_map[gamma] == usize::MAX {
                lambda_map[gamma] = val;
            } else if lambda_map[gamma] != val {
                return Err(CoverError::SourceMismatch);
            }
        }
        let lambda = GroupHom::new(u.target().clone(), quot.clone(), lambda_map)?;
        Ok(CoverSpec { u, phi, pi_bar, g_bar, quot, v, lambda })
    }

    pub fn pi(&self) -> &Arc<FiniteGroup> {
        self.u.source()
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.u.target()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.phi.target()
    }

    pub fn u(&self) -> &GroupHom {
        &self.u
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    /// Kernel of u: the geometric fundamental group.
    pub fn pi_bar(&self) -> &Subgroup {
        &self.pi_bar
    }

    /// φ(Π̄): the geometric Galois group.
    pub fn g_bar(&self) -> &Subgroup {
        &self.g_bar
    }

    pub fn quot(&self) -> &Arc<FiniteGroup> {
        &self.quot
    }

    pub fn v(&self) -> &GroupHom {
        &self.v
    }

    /// The scalar-extension map Γ → G/Ḡ induced by the cover.
    pub fn lambda(&self) -> &GroupHom {
        &self.lambda
    }

    /// G with the trivial Γ-action: the coefficient group of target torsors.
    pub fn target_gamma_group(&self) -> GammaGroup {
        GammaGroup::trivial_action(self.gamma().clone(), self.group().clone())
    }

    /// G/Ḡ with the trivial Γ-action.
    pub fn quot_gamma_group(&self) -> GammaGroup {
        GammaGroup::trivial_action(self.gamma().clone(), self.quot.clone())
    }

    /// Build a target cocycle from explicit values (trivial action, so the
    /// table must be a homomorphism Γ → G).
    pub fn target_cocycle(&self, values: Vec<Elem>) -> Result<Cocycle, CoverError> {
        Ok(Cocycle::new(self.target_gamma_group(), values)?)
    }

    fn check_target(&self, psi: &Cocycle) -> Result<(), CoverError> {
        if *psi.gg() != self.target_gamma_group() {
            return Err(CoverError::BadTargetCocycle);
        }
        Ok(())
    }
}

/// A section of u: Π ↠ Γ; models an unramified rational point of the base.
#[derive(Clone, PartialEq, Eq)]
pub struct SectionPoint {
    hom: GroupHom,
}

impl fmt::Debug for SectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SectionPoint{:?}", self.hom.map())
    }
}

impl SectionPoint {
    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    #[inline]
    pub fn apply(&self, gamma: Elem) -> Elem {
        self.hom.apply(gamma)
    }
}

/// Wrap a homomorphism known to be a section, e.g. a Π̄-conjugate of an
/// enumerated one.
pub fn section_from_hom_unchecked(hom: GroupHom) -> SectionPoint {
    SectionPoint { hom }
}

/// All homomorphic sections of u, optionally one representative per
/// Π̄-conjugacy orbit, in lexicographic order of the map table.
pub fn sections(cover: &CoverSpec, up_to_pi_bar_conjugacy: bool) -> Vec<SectionPoint> {
    let id = GroupHom::identity(cover.gamma());
    let all = enumerate_homs(
        cover.gamma(),
        cover.pi(),
        &HomConstraints::new().composed_with(cover.u(), &id),
    );
    let mut out: Vec<SectionPoint> = Vec::new();
    'next: for hom in all {
        if up_to_pi_bar_conjugacy {
            let pi = cover.pi();
            for kept in &out {
                let conjugate = cover.pi_bar.members().iter().any(|&p| {
                    cover
                        .gamma()
                        .elements()
                        .all(|gamma| kept.hom.apply(gamma) == pi.conj(p, hom.apply(gamma)))
                });
                if conjugate {
                    continue 'next;
                }
            }
        }
        out.push(SectionPoint { hom });
    }
    out
}

/// The specialization of the cover at a section: the cocycle φ∘s.
pub fn specialization(cover: &CoverSpec, s: &SectionPoint) -> Cocycle {
    let values = cover.gamma().elements().map(|gamma| cover.phi.apply(s.apply(gamma))).collect();
    Cocycle::new(cover.target_gamma_group(), values)
        .expect("a composite of homomorphisms is a trivial-action cocycle")
}

/// Condition (⋆): the G/Ḡ-quotient of the target torsor matches the
/// scalar-extension torsor of the cover.
pub fn star_condition(cover: &CoverSpec, psi: &Cocycle) -> Result<bool, CoverError> {
    Ok(star_witness(cover, psi)?.is_some())
}

/// The smallest w with v∘ψ = w⁻¹·Λ·w, if any.
fn star_witness(cover: &CoverSpec, psi: &Cocycle) -> Result<Option<Elem>, CoverError> {
    cover.check_target(psi)?;
    let gg_quot = cover.quot_gamma_group();
    let pushed = psi.pushforward(&gg_quot, cover.v())?;
    let lambda_cocycle = Cocycle::new(gg_quot, cover.lambda().map().to_vec())?;
    Ok(twisted_conjugate_equiv(&lambda_cocycle, &pushed))
}

/// Brute-force route: the first section whose specialization is conjugate to
/// the target, found by exhausting sections.
pub fn specialization_exists_oracle(
    cover: &CoverSpec,
    psi: &Cocycle,
) -> Result<Option<SectionPoint>, CoverError> {
    cover.check_target(psi)?;
    Ok(sections(cover, false)
        .into_iter()
        .find(|s| twisted_conjugate_equiv(&specialization(cover, s), psi).is_some()))
}

/// The twisted cover: the Π-set on the points of G with
/// π ⋆ g = φ(π) · g · ψ(u(π))⁻¹.
pub fn twisted_cover(cover: &CoverSpec, psi: &Cocycle) -> Result<GammaSet, CoverError> {
    cover.check_target(psi)?;
    let g = cover.group();
    let action = cover
        .pi()
        .elements()
        .map(|p| {
            let left = cover.phi.apply(p);
            let right = g.inv(psi.value(cover.u.apply(p)));
            g.elements().map(|x| g.mul(g.mul(left, x), right)).collect()
        })
        .collect();
    Ok(GammaSet::new(cover.pi().clone(), g.order(), action)?)
}

/// The fiber of a Π-set at a section: the Γ-set obtained by composing the
/// action with s.
pub fn fiber_at_section(cover: &CoverSpec, total: &GammaSet, s: &SectionPoint) -> GammaSet {
    let action = cover
        .gamma()
        .elements()
        .map(|gamma| total.action_table()[s.apply(gamma)].clone())
        .collect();
    GammaSet::new(cover.gamma().clone(), total.size(), action)
        .expect("composing an action with a homomorphism is an action")
}

/// Twisting-lemma route: the first section whose fiber in the twisted cover
/// has a Γ-fixed point. Agrees with `specialization_exists_oracle` on every
/// input; the two are kept as independent code paths.
pub fn specialization_exists_twisted(
    cover: &CoverSpec,
    psi: &Cocycle,
) -> Result<Option<SectionPoint>, CoverError> {
    let total = twisted_cover(cover, psi)?;
    Ok(sections(cover, false)
        .into_iter()
        .find(|s| !fiber_at_section(cover, &total, s).fixed_points().is_empty()))
}

/// A connected component of the twisted cover lying over a central element
/// of G/Ḡ.
#[derive(Clone, Debug)]
pub struct DecompComponent {
    /// The element of Z(G/Ḡ) indexing the component.
    pub label: Elem,
    /// Points of the twisted cover in the component, sorted.
    pub points: Vec<usize>,
    /// Whether Π̄ acts transitively on the component.
    pub geometrically_connected: bool,
}

/// Decompose the twisted cover along the Γ-fixed points of its quotient:
/// one Π-stable component per element of Z(G/Ḡ), each expected to be
/// Π̄-transitive. Requires (⋆).
pub fn decomposition_components(
    cover: &CoverSpec,
    psi: &Cocycle,
) -> Result<Vec<DecompComponent>, CoverError> {
    let Some(w) = star_witness(cover, psi)? else {
        return Err(CoverError::StarConditionFails);
    };
    let total = twisted_cover(cover, psi)?;
    let quot = cover.quot();
    let w_inv = quot.inv(w);
    let center = quot.center();
    let mut out = Vec::new();
    for &z in center.members() {
        let points: Vec<usize> = cover
            .group()
            .elements()
            .filter(|&g| quot.mul(cover.v().apply(g), w_inv) == z)
            .collect();
        // Π-stability of the fiber over a fixed point
        let stable = cover.pi().elements().all(|p| {
            points.iter().all(|&x| points.binary_search(&total.act(p, x)).is_ok())
        });
        debug_assert!(stable, "fibers over fixed labels must be stable");
        let geometrically_connected = pi_bar_transitive(cover, &total, &points);
        out.push(DecompComponent { label: z, points, geometrically_connected });
    }
    Ok(out)
}

fn pi_bar_transitive(cover: &CoverSpec, total: &GammaSet, points: &[usize]) -> bool {
    let Some(&start) = points.first() else { return false };
    let mut reached = vec![start];
    let mut head = 0;
    while head < reached.len() {
        let x = reached[head];
        head += 1;
        for &p in cover.pi_bar.members() {
            let y = total.act(p, x);
            if !reached.contains(&y) {
                reached.push(y);
            }
        }
    }
    reached.len() == points.len() && reached.iter().all(|x| points.contains(x))
}

/// Count the sections whose specialization is conjugate to the target.
/// Requires (⋆); positive exactly when a component fiber has a fixed point.
pub fn pac_census(cover: &CoverSpec, psi: &Cocycle) -> Result<usize, CoverError> {
    if !star_condition(cover, psi)? {
        return Err(CoverError::StarConditionFails);
    }
    Ok(sections(cover, false)
        .into_iter()
        .filter(|s| twisted_conjugate_equiv(&specialization(cover, s), psi).is_some())
        .count())
}

/// Two sections have isomorphic fibers iff the double-point Γ-set
/// g ↦ φ(s(γ))·g·φ(t(γ))⁻¹ has a fixed point.
pub fn double_point_test(cover: &CoverSpec, s: &SectionPoint, t: &SectionPoint) -> bool {
    let g = cover.group();
    let fixed = g.elements().any(|x| {
        cover.gamma().elements().all(|gamma| {
            let left = cover.phi.apply(s.apply(gamma));
            let right = g.inv(cover.phi.apply(t.apply(gamma)));
            g.mul(g.mul(left, x), right) == x
        })
    });
    fixed
}

// ---------------------------------------------------------------------------
// Partial quotients: Isom over a common G/K-quotient torsor.
// ---------------------------------------------------------------------------

/// Quotient of a right G-torsor by a Γ-stable normal subgroup K: the right
/// G/K-torsor on the K-orbits, plus the point projection.
pub fn torsor_quotient(
    p: &Torsor,
    k: &Subgroup,
) -> Result<(Torsor, Vec<usize>), CoverError> {
    let gg = p.gg();
    if k.parent().as_ref() != gg.group().as_ref() {
        return Err(CoverError::Torsor(crate::error::TorsorError::GammaGroupMismatch));
    }
    k.require_normal()?;
    for gamma in gg.gamma().elements() {
        for &m in k.members() {
            if !k.contains(gg.act(gamma, m)) {
                return Err(CoverError::Twist(crate::error::TwistError::NotGammaStable {
                    gamma,
                    k: m,
                }));
            }
        }
    }
    let (quot, theta) = gg.group().quotient(k)?;
    let act_q: Vec<Vec<Elem>> = gg
        .gamma()
        .elements()
        .map(|gamma| {
            let mut row = vec![usize::MAX; quot.order()];
            for g in gg.group().elements() {
                row[theta.apply(g)] = theta.apply(gg.act(gamma, g));
            }
            row
        })
        .collect();
    let gg_quot = GammaGroup::new(gg.gamma().clone(), quot.clone(), act_q)
        .map_err(crate::error::TorsorError::from)?;
    // K-orbits, numbered by smallest member
    let mut proj = vec![usize::MAX; p.size()];
    let mut reps = Vec::new();
    for x in 0..p.size() {
        if proj[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in k.members() {
            proj[p.right_act(x, m)] = idx;
        }
    }
    // a θ-preimage for each coset
    let mut pre = vec![usize::MAX; quot.order()];
    for g in gg.group().elements() {
        let q = theta.apply(g);
        if pre[q] == usize::MAX {
            pre[q] = g;
        }
    }
    let right = quot
        .elements()
        .map(|q| reps.iter().map(|&r| proj[p.right_act(r, pre[q])]).collect())
        .collect();
    let gamma_action = gg
        .gamma()
        .elements()
        .map(|gamma| reps.iter().map(|&r| proj[p.gamma_act(gamma, r)]).collect())
        .collect();
    let t = Torsor::new(gg_quot, reps.len(), right, gamma_action)
        .map_err(CoverError::Torsor)?;
    Ok((t, proj))
}

/// For each Γ-invariant isomorphism s of the common quotient torsor R,
/// check that the G-isomorphisms p1 → p2 inducing s correspond exactly,
/// point by point and equivariantly, to the fiberwise K-isomorphisms
/// covering s.
pub fn quotient_partiel_check(
    p1: &Torsor,
    p2: &Torsor,
    k: &Subgroup,
) -> Result<TwistReport, CoverError> {
    let (r, proj1) = torsor_quotient(p1, k)?;
    let (q2, proj2) = torsor_quotient(p2, k)?;
    let Some(beta) = q2.is_isomorphic(&r).map_err(CoverError::Torsor)? else {
        return Err(CoverError::NoCommonQuotient);
    };
    let mut report = TwistReport::new("quotient-partiel");

    // representatives of each R-point inside p1 and p2
    let rep_in = |proj: &[usize], size: usize, r_idx: usize| -> usize {
        (0..size).find(|&x| proj[x] == r_idx).expect("projections are onto")
    };
    let fiber_of = |proj: &[usize], size: usize, r_idx: usize| -> Vec<usize> {
        (0..size).filter(|&x| proj[x] == r_idx).collect()
    };
    // all plain right-G-maps p1 → p2 (Γ ignored): one per image of point 0
    let g_grp = p1.gg().group();
    let plain_maps: Vec<Vec<usize>> = (0..p2.size())
        .map(|y| {
            let mut f = vec![usize::MAX; p1.size()];
            for g in g_grp.elements() {
                f[p1.right_act(0, g)] = p2.right_act(y, g);
            }
            f
        })
        .collect();
    let induced = |f: &[usize]| -> Vec<usize> {
        (0..r.size())
            .map(|ri| beta[proj2[f[rep_in(&proj1, p1.size(), ri)]]])
            .collect()
    };

    for s in r.isoms(&r).map_err(CoverError::Torsor)? {
        let fiber_maps: Vec<&Vec<usize>> =
            plain_maps.iter().filter(|f| induced(f) == s).collect();

        // the fiberwise K-isomorphisms covering s: for each R-point, all
        // right-K-equivariant bijections fiber1(r) → fiber2(s(r))
        type FiberIso = (usize, Vec<(usize, usize)>);
        let mut fiberwise: Vec<FiberIso> = Vec::new();
        for ri in 0..r.size() {
            let f1 = fiber_of(&proj1, p1.size(), ri);
            let target_r = s[ri];
            let j = beta.iter().position(|&b| b == target_r).expect("beta is a bijection");
            let f2 = fiber_of(&proj2, p2.size(), j);
            let x0 = f1[0];
            for &y in &f2 {
                let mut pairs: Vec<(usize, usize)> = f1
                    .iter()
                    .map(|&x| {
                        let kk = p1.transport_from(x0, x);
                        (x, p2.right_act(y, kk))
                    })
                    .collect();
                pairs.sort_unstable();
                fiberwise.push((ri, pairs));
            }
        }
        fiberwise.sort_unstable();

        // canonical map: (f, r) ↦ restriction of f to fiber1(r)
        let mut restricted: Vec<FiberIso> = Vec::new();
        for f in &fiber_maps {
            for ri in 0..r.size() {
                let mut pairs: Vec<(usize, usize)> = fiber_of(&proj1, p1.size(), ri)
                    .into_iter()
                    .map(|x| (x, f[x]))
                    .collect();
                pairs.sort_unstable();
                restricted.push((ri, pairs));
            }
        }
        restricted.sort_unstable();

        let instance = format!("s={s:?}");
        if restricted != fiberwise {
            report.fail(instance, 0, 0);
            continue;
        }

        // Γ-equivariance of the correspondence
        let gamma = p1.gg().gamma();
        let mut ok = true;
        'eq: for f in &fiber_maps {
            for gm in gamma.elements() {
                let gm_inv = gamma.inv(gm);
                // γ·f as a plain map
                let conj: Vec<usize> = (0..p1.size())
                    .map(|x| p2.gamma_act(gm, f[p1.gamma_act(gm_inv, x)]))
                    .collect();
                if induced(&conj) != s {
                    ok = false;
                    break 'eq;
                }
                for ri in 0..r.size() {
                    let target = r.gamma_act(gm, ri);
                    for x in fiber_of(&proj1, p1.size(), ri) {
                        let moved = p1.gamma_act(gm, x);
                        debug_assert_eq!(proj1[moved], target);
                        if conj[moved] != p2.gamma_act(gm, f[x]) {
                            ok = false;
                            break 'eq;
                        }
                    }
                }
            }
        }
        if ok {
            report.pass(instance, s);
        } else {
            report.fail(instance, 0, 0);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Non-Galois targets through an ambient symmetric group.
// ---------------------------------------------------------------------------

/// Result of the non-Galois fixed-point test.
#[derive(Clone, Debug)]
pub struct NonGaloisOutcome {
    pub isomorphic_as_covers: bool,
    /// Passing (embedding, section) pairs, embeddings up to inner
    /// automorphisms of G.
    pub witnesses: Vec<(GroupHom, SectionPoint)>,
}

/// Degree-n test: the cover composed into Sₙ specializes to the étale
/// algebra of ψ iff some embedding η of H = im(ψ) into G, compatible with
/// the ambient embeddings up to Sₙ-conjugacy, makes the twisted fixed-point
/// test succeed at some section.
pub fn nongalois_test(
    cover: &CoverSpec,
    nu: &GroupHom,
    psi: &Cocycle,
) -> Result<NonGaloisOutcome, CoverError> {
    let sn = nu.target();
    if !nu.is_injective() {
        return Err(CoverError::NotAnEmbedding);
    }
    if nu.source().as_ref() != cover.group().as_ref()
        || psi.gg().group().as_ref() != sn.as_ref()
        || psi.gg().gamma().as_ref() != cover.gamma().as_ref()
        || !psi.gg().is_trivial_action()
    {
        return Err(CoverError::BadTargetCocycle);
    }
    // H = im(ψ) with its inclusion μ into Sₙ and the corestriction ψ̃
    let image = sn.subgroup(&{
        let mut m: Vec<Elem> = psi.values().to_vec();
        let mut closure = vec![0];
        // image of a homomorphism is closed, but close anyway for safety
        loop {
            let mut changed = false;
            for &a in &m {
                for &b in &closure.clone() {
                    let p = sn.mul(a, b);
                    if !closure.contains(&p) {
                        closure.push(p);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        m = closure;
        m.sort_unstable();
        m
    })?;
    let (h_grp, mu) = image.to_group("H");
    let psi_tilde = GroupHom::new(
        cover.gamma().clone(),
        h_grp.clone(),
        psi.values()
            .iter()
            .map(|&v| image.members().binary_search(&v).expect("value lies in the image"))
            .collect(),
    )?;

    // embeddings η: H ↪ G with ν∘η Sₙ-conjugate to μ; the conjugation slack
    // absorbs the basepoint freedom in describing the target algebra
    let candidates = enumerate_homs(&h_grp, cover.group(), &HomConstraints::new().injective());
    let mut embeddings: Vec<GroupHom> = candidates
        .into_iter()
        .filter(|eta| {
            sn.elements().any(|sigma| {
                h_grp.elements().all(|h| {
                    nu.apply(eta.apply(h)) == sn.conj(sigma, mu.apply(h))
                })
            })
        })
        .collect();
    // quotient by inner automorphisms of G (conjugate embeddings give
    // isomorphic pushed torsors)
    let g = cover.group();
    let mut kept: Vec<GroupHom> = Vec::new();
    'next: for eta in embeddings.drain(..) {
        for prev in &kept {
            let inner_conj = g.elements().any(|w| {
                h_grp.elements().all(|h| eta.apply(h) == g.conj(w, prev.apply(h)))
            });
            if inner_conj {
                continue 'next;
            }
        }
        kept.push(eta);
    }

    let secs = sections(cover, false);
    let mut witnesses = Vec::new();
    for eta in &kept {
        let pushed = cover.target_cocycle(
            cover.gamma().elements().map(|gm| eta.apply(psi_tilde.apply(gm))).collect(),
        )?;
        for s in &secs {
            if twisted_conjugate_equiv(&specialization(cover, s), &pushed).is_some() {
                witnesses.push((eta.clone(), s.clone()));
            }
        }
    }
    Ok(NonGaloisOutcome { isomorphic_as_covers: !witnesses.is_empty(), witnesses })
}

/// Direct oracle: a section s and σ ∈ Sₙ with ν∘φ∘s = σ·ψ·σ⁻¹.
pub fn nongalois_oracle(
    cover: &CoverSpec,
    nu: &GroupHom,
    psi: &Cocycle,
) -> Result<Option<(SectionPoint, Elem)>, CoverError> {
    let sn = nu.target();
    if !nu.is_injective() {
        return Err(CoverError::NotAnEmbedding);
    }
    for s in sections(cover, false) {
        for sigma in sn.elements() {
            let matches = cover.gamma().elements().all(|gamma| {
                nu.apply(cover.phi.apply(s.apply(gamma)))
                    == sn.conj(sigma, psi.value(gamma))
            });
            if matches {
                return Ok(Some((s, sigma)));
            }
        }
    }
    Ok(None)
}

/// Galois-target test: per section, the fiber is a disjoint union of
/// (G:H) copies of the Γ-set of ψ̃ iff some embedding j: H ↪ G with v∘j
/// surjective makes the specialization conjugate to j∘ψ̃. Both routes are
/// computed independently and compared.
pub fn galois_n_test(cover: &CoverSpec, psi_tilde: &GroupHom) -> Result<TwistReport, CoverError> {
    psi_tilde.require_surjective()?;
    if psi_tilde.source().as_ref() != cover.gamma().as_ref() {
        return Err(CoverError::BadTargetCocycle);
    }
    let h = psi_tilde.target();
    let g = cover.group();
    let mut report = TwistReport::new("galois-n");

    let embeddings: Vec<GroupHom> =
        enumerate_homs(h, g, &HomConstraints::new().injective())
            .into_iter()
            .filter(|j| {
                // v∘j surjective
                let mut seen = vec![false; cover.quot().order()];
                for x in h.elements() {
                    seen[cover.v().apply(j.apply(x))] = true;
                }
                seen.into_iter().all(|b| b)
            })
            .collect();

    // the Γ-set of the H-torsor of ψ̃, repeated (G:H) times
    let h_set = GammaSet::new(
        cover.gamma().clone(),
        h.order(),
        cover
            .gamma()
            .elements()
            .map(|gm| h.elements().map(|x| h.mul(psi_tilde.apply(gm), x)).collect())
            .collect(),
    )
    .map_err(crate::error::TorsorError::from)?;
    let copies = g.order() / h.order();
    let mut disjoint = h_set.clone();
    for _ in 1..copies {
        disjoint = disjoint.disjoint_union(&h_set);
    }

    for s in sections(cover, false) {
        let spec_cocycle = specialization(cover, &s);
        // route A: plain Γ-set comparison
        let spec_set = GammaSet::new(
            cover.gamma().clone(),
            g.order(),
            cover
                .gamma()
                .elements()
                .map(|gm| {
                    g.elements().map(|x| g.mul(spec_cocycle.value(gm), x)).collect()
                })
                .collect(),
        )
        .map_err(crate::error::TorsorError::from)?;
        let route_a = if g.order() % h.order() == 0 {
            !gamma_set_isoms(&spec_set, &disjoint).is_empty()
        } else {
            false
        };
        // route B: embedding-indexed conjugacy
        let route_b = embeddings.iter().any(|j| {
            let pushed: Vec<Elem> =
                cover.gamma().elements().map(|gm| j.apply(psi_tilde.apply(gm))).collect();
            let pushed = Cocycle::new(cover.target_gamma_group(), pushed)
                .expect("composite homomorphism");
            twisted_conjugate_equiv(&spec_cocycle, &pushed).is_some()
        });
        let instance = format!("section={:?}", s.hom().map());
        if route_a == route_b {
            report.pass(instance, Vec::new());
        } else {
            report.fail(instance, 0, 0);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, dihedral, quaternion8, symmetric3};

    /// Π = S3, Γ = Z2 by sign, φ = id.
    pub(crate) fn s3_cover() -> CoverSpec {
        let s3 = symmetric3();
        let z2 = cyclic(2);
        let sgn = GroupHom::new(s3.clone(), z2, vec![0, 1, 1, 1, 0, 0]).unwrap();
        let id = GroupHom::identity(&s3);
        CoverSpec::new(sgn, id).unwrap()
    }

    #[test]
    fn s3_cover_derived_data() {
        let cover = s3_cover();
        assert_eq!(cover.pi_bar().members(), &[0, 4, 5]);
        assert_eq!(cover.g_bar().members(), &[0, 4, 5]);
        assert_eq!(cover.quot().order(), 2);
        // Λ is the identity of Z2
        assert_eq!(cover.lambda().map(), &[0, 1]);
    }

    #[test]
    fn s3_cover_sections() {
        let cover = s3_cover();
        let all = sections(&cover, false);
        assert_eq!(all.len(), 3);
        let reps: Vec<Elem> = all.iter().map(|s| s.apply(1)).collect();
        assert_eq!(reps, vec![1, 2, 3]); // the three transpositions
        assert_eq!(sections(&cover, true).len(), 1);
    }

    #[test]
    fn z4_cover_has_no_sections() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let u = GroupHom::new(z4.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        let phi = GroupHom::identity(&z4);
        let cover = CoverSpec::new(u, phi).unwrap();
        assert!(sections(&cover, false).is_empty());
    }

    #[test]
    fn direct_product_cover_always_has_sections() {
        let (_pi, proj_s3, proj_z2) = direct_product(&symmetric3(), &cyclic(2));
        let cover = CoverSpec::new(proj_z2, proj_s3).unwrap();
        assert!(!sections(&cover, false).is_empty());
    }

    #[test]
    fn conjugate_sections_give_cohomologous_specializations() {
        let cover = s3_cover();
        let all = sections(&cover, false);
        for a in &all {
            for b in &all {
                let ca = specialization(&cover, a);
                let cb = specialization(&cover, b);
                assert!(twisted_conjugate_equiv(&ca, &cb).is_some());
                assert!(double_point_test(&cover, a, b));
            }
        }
    }

    #[test]
    fn star_condition_on_the_s3_cover() {
        let cover = s3_cover();
        let psi_t = cover.target_cocycle(vec![0, 1]).unwrap();
        assert!(star_condition(&cover, &psi_t).unwrap());
        let psi_triv = cover.target_cocycle(vec![0, 0]).unwrap();
        assert!(!star_condition(&cover, &psi_triv).unwrap());
    }

    #[test]
    fn star_condition_invariant_under_cohomologous_replacement() {
        let cover = s3_cover();
        for t in [1usize, 2, 3] {
            let psi = cover.target_cocycle(vec![0, t]).unwrap();
            assert!(star_condition(&cover, &psi).unwrap());
        }
    }

    #[test]
    fn star_forces_gbar_times_image_to_cover_g() {
        // a consequence of (⋆): Ḡ·im(ψ) = G
        let cover = s3_cover();
        let psi = cover.target_cocycle(vec![0, 1]).unwrap();
        assert!(star_condition(&cover, &psi).unwrap());
        let g = cover.group();
        let mut cover_set: Vec<Elem> = Vec::new();
        for &b in cover.g_bar().members() {
            for &i in psi.values() {
                cover_set.push(g.mul(b, i));
            }
        }
        cover_set.sort_unstable();
        cover_set.dedup();
        assert_eq!(cover_set.len(), g.order());
    }

    #[test]
    fn twisted_cover_has_g_many_points() {
        let cover = s3_cover();
        let psi = cover.target_cocycle(vec![0, 1]).unwrap();
        let t = twisted_cover(&cover, &psi).unwrap();
        assert_eq!(t.size(), 6);
    }

    #[test]
    fn twisted_route_matches_oracle_on_s3_cover() {
        let cover = s3_cover();
        for values in [vec![0usize, 0], vec![0, 1], vec![0, 2], vec![0, 3]] {
            let psi = cover.target_cocycle(values).unwrap();
            let oracle = specialization_exists_oracle(&cover, &psi).unwrap();
            let twisted = specialization_exists_twisted(&cover, &psi).unwrap();
            assert_eq!(oracle.is_some(), twisted.is_some());
            assert_eq!(oracle.map(|s| s.hom().map().to_vec()),
                       twisted.map(|s| s.hom().map().to_vec()));
        }
    }

    #[test]
    fn fiber_matches_twist_torsor_tables() {
        let cover = s3_cover();
        let psi = cover.target_cocycle(vec![0, 1]).unwrap();
        let total = twisted_cover(&cover, &psi).unwrap();
        for s in sections(&cover, false) {
            let fiber = fiber_at_section(&cover, &total, &s);
            let p = Torsor::from_cocycle(&psi);
            let q = Torsor::from_cocycle(&specialization(&cover, &s));
            let tt = crate::twist::twist_torsor(&p, &q).unwrap();
            assert_eq!(fiber.action_table(), tt.gamma_table());
        }
    }

    #[test]
    fn decomposition_of_the_s3_cover() {
        let cover = s3_cover();
        let psi = cover.target_cocycle(vec![0, 1]).unwrap();
        let comps = decomposition_components(&cover, &psi).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!(c.points.len(), 3);
            assert!(c.geometrically_connected);
        }
        let all: usize = comps.iter().map(|c| c.points.len()).sum();
        assert_eq!(all, 6);
    }

    #[test]
    fn decomposition_requires_star() {
        let cover = s3_cover();
        let psi = cover.target_cocycle(vec![0, 0]).unwrap();
        assert!(matches!(
            decomposition_components(&cover, &psi),
            Err(CoverError::StarConditionFails)
        ));
    }

    #[test]
    fn geometrically_galois_cover_has_one_component() {
        let (pi, proj_s3, proj_z2) = direct_product(&symmetric3(), &cyclic(2));
        let _ = pi;
        let cover = CoverSpec::new(proj_z2, proj_s3).unwrap();
        assert!(cover.g_bar().is_whole_group());
        let psi = cover.target_cocycle(vec![0, 0]).unwrap();
        let comps = decomposition_components(&cover, &psi).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].points.len(), 6);
        assert!(comps[0].geometrically_connected);
    }

    #[test]
    fn pac_census_counts_three_on_the_s3_cover() {
        let cover = s3_cover();
        let psi = cover.target_cocycle(vec![0, 1]).unwrap();
        assert_eq!(pac_census(&cover, &psi).unwrap(), 3);
        let bad = cover.target_cocycle(vec![0, 0]).unwrap();
        assert!(pac_census(&cover, &bad).is_err());
    }

    #[test]
    fn pac_census_is_positive_for_liftable_targets_of_product_covers() {
        // Π = S3 × Z2 with φ the projection: any hom ψ: Γ → G that lifts to
        // a section gives census ≥ 1
        let (_, proj_s3, proj_z2) = direct_product(&symmetric3(), &cyclic(2));
        let cover = CoverSpec::new(proj_z2, proj_s3).unwrap();
        for t in [0usize, 1, 2, 3] {
            let psi = cover.target_cocycle(vec![0, t]).unwrap();
            if star_condition(&cover, &psi).unwrap() {
                assert!(pac_census(&cover, &psi).unwrap() >= 1, "psi(1)={t}");
            }
        }
    }

    #[test]
    fn quotient_partiel_on_s3_torsors() {
        let gg = GammaGroup::trivial_action(cyclic(2), symmetric3());
        let a3 = symmetric3().subgroup(&[0, 4, 5]).unwrap();
        let c = Cocycle::new(gg.clone(), vec![0, 1]).unwrap();
        let p = Torsor::from_cocycle(&c);
        let report = quotient_partiel_check(&p, &p, &a3).unwrap();
        assert!(report.passing(), "{report:?}");
        assert!(report.instances() >= 1);
    }

    #[test]
    fn quotient_partiel_with_k_twist() {
        // p2 = twist of p1 by an A3-valued cocycle: common quotient,
        // nonempty fiber over the identity section
        let a3 = symmetric3().subgroup(&[0, 4, 5]).unwrap();
        let gg3 = GammaGroup::trivial_action(cyclic(3), symmetric3());
        let p1 = Torsor::from_cocycle(&Cocycle::trivial(gg3.clone()));
        let ck = Cocycle::new(gg3, vec![0, 4, 5]).unwrap(); // lands in A3
        let p2 = Torsor::from_cocycle(&ck);
        let report = quotient_partiel_check(&p1, &p2, &a3).unwrap();
        assert!(report.passing(), "{report:?}");
    }

    #[test]
    fn nongalois_s3_point_stabilizer() {
        let cover = s3_cover();
        let s3 = symmetric3();
        let nu = GroupHom::identity(&s3);
        // ψ: Z2 → S3 hitting a transposition: H = Z2 as a point stabilizer
        let psi = cover.target_cocycle(vec![0, 1]).unwrap();
        let outcome = nongalois_test(&cover, &nu, &psi).unwrap();
        assert!(outcome.isomorphic_as_covers);
        assert!(!outcome.witnesses.is_empty());
        let oracle = nongalois_oracle(&cover, &nu, &psi).unwrap();
        assert!(oracle.is_some());
    }

    #[test]
    fn nongalois_rejects_three_cycle_target() {
        let cover = s3_cover();
        let s3 = symmetric3();
        let nu = GroupHom::identity(&s3);
        let psi = cover.target_cocycle(vec![0, 0]).unwrap();
        // trivial ψ: H = 1; sections specialize to transpositions, never trivial
        let outcome = nongalois_test(&cover, &nu, &psi).unwrap();
        assert!(!outcome.isomorphic_as_covers);
        assert!(nongalois_oracle(&cover, &nu, &psi).unwrap().is_none());
    }

    #[test]
    fn nongalois_lagrange_empty() {
        // H of order 2 cannot embed into G = Z3
        let z6 = cyclic(6);
        let z2 = cyclic(2);
        let z3 = cyclic(3);
        let u = GroupHom::new(z6.clone(), z2.clone(), vec![0, 1, 0, 1, 0, 1]).unwrap();
        let phi = GroupHom::new(z6.clone(), z3.clone(), vec![0, 1, 2, 0, 1, 2]).unwrap();
        let cover = CoverSpec::new(u, phi).unwrap();
        let s3 = symmetric3();
        // ν: Z3 ↪ S3 as the 3-cycles
        let nu = GroupHom::new(z3, s3.clone(), vec![0, 4, 5]).unwrap();
        // ψ: Z2 → S3 transposition-valued
        let psi = Cocycle::new(
            GammaGroup::trivial_action(cyclic(2), s3),
            vec![0, 1],
        )
        .unwrap();
        let outcome = nongalois_test(&cover, &nu, &psi).unwrap();
        assert!(!outcome.isomorphic_as_covers);
        assert!(nongalois_oracle(&cover, &nu, &psi).unwrap().is_none());
    }

    #[test]
    fn nongalois_needs_conjugacy_closure_of_embeddings() {
        // D4 ⊂ S4; target transposition (0 1) lies outside D4 but is
        // S4-conjugate to (1 3) ∈ D4, so the test must still succeed
        let d4 = dihedral(4);
        let z2 = cyclic(2);
        let (pi, proj_d4, proj_z2) = direct_product(&d4, &cyclic(2));
        let _ = pi;
        let cover = CoverSpec::new(proj_z2, proj_d4).unwrap();
        let s4 = crate::group::symmetric(4);
        // ν: D4 ↪ S4 by its action on the square's vertices
        let nu_map: Vec<Elem> = (0..8)
            .map(|e| {
                // dihedral(4) elements act on 0..4; recover the permutation
                let perm: Vec<usize> = match e {
                    0 => vec![0, 1, 2, 3],
                    1 => vec![1, 2, 3, 0],
                    2 => vec![2, 3, 0, 1],
                    3 => vec![3, 0, 1, 2],
                    4 => vec![0, 3, 2, 1],
                    5 => vec![1, 0, 3, 2],
                    6 => vec![2, 1, 0, 3],
                    7 => vec![3, 2, 1, 0],
                    _ => unreachable!(),
                };
                crate::group::symmetric_index(&s4, &perm).unwrap()
            })
            .collect();
        let nu = GroupHom::new(d4.clone(), s4.clone(), nu_map).unwrap();
        // ψ(1) = the transposition (0 1)
        let t01 = crate::group::symmetric_index(&s4, &[1, 0, 2, 3]).unwrap();
        let psi = Cocycle::new(
            GammaGroup::trivial_action(z2, s4.clone()),
            vec![0, t01],
        )
        .unwrap();
        let outcome = nongalois_test(&cover, &nu, &psi).unwrap();
        let oracle = nongalois_oracle(&cover, &nu, &psi).unwrap();
        assert!(oracle.is_some());
        assert!(outcome.isomorphic_as_covers);
    }

    #[test]
    fn galois_n_routes_agree_on_s3_cover() {
        let cover = s3_cover();
        let z2 = cyclic(2);
        // N of group Z2
        let psi_tilde = GroupHom::identity(&z2);
        let psi_tilde =
            GroupHom::new(cover.gamma().clone(), z2, psi_tilde.map().to_vec()).unwrap();
        let report = galois_n_test(&cover, &psi_tilde).unwrap();
        assert!(report.passing(), "{report:?}");
        // trivial target group: sections specialize nontrivially
        let one = cyclic(1);
        let psi_triv = GroupHom::new(cover.gamma().clone(), one, vec![0, 0]).unwrap();
        let report = galois_n_test(&cover, &psi_triv).unwrap();
        assert!(report.passing(), "{report:?}");
    }

    #[test]
    fn no_section_cover_from_quaternions() {
        let q8 = quaternion8();
        let z2 = cyclic(2);
        // quotient by <i> = {1,-1,i,-i}: elements 0..3
        let sub = q8.subgroup(&[0, 1, 2, 3]).unwrap();
        let (quot, theta) = q8.quotient(&sub).unwrap();
        assert_eq!(quot.order(), 2);
        let u = GroupHom::new(q8.clone(), z2, theta.map().to_vec()).unwrap();
        let phi = GroupHom::identity(&q8);
        let cover = CoverSpec::new(u, phi).unwrap();
        assert!(sections(&cover, false).is_empty());
        let psi = cover.target_cocycle(vec![0, 0]).unwrap();
        assert!(specialization_exists_twisted(&cover, &psi).unwrap().is_none());
        assert!(specialization_exists_oracle(&cover, &psi).unwrap().is_none());
    }
}
