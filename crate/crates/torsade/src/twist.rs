//! The twisting functor on G-objects and its verification machinery.
//!
//! Twisting a G-object ξ by a cocycle c keeps the points and the G-action
//! and replaces the Γ-action by γ ⋆ x = c(γ)·(γ·x). The result is a valid
//! object for the inner form of the Γ-group, twisting by the inverse cocycle
//! undoes it on the nose, and composing two twists multiplies the cocycles.
//! Each of those statements is exercised by an executable check returning a
//! `TwistReport` whose instances carry explicit isomorphism witnesses.

use crate::error::TwistError;
use crate::gamma::{h1, twisted_conjugate_equiv, Cocycle, GammaGroup};
use crate::group::{Elem, GroupHom, Subgroup};
use crate::gset::{GammaSet, GObject};
use crate::report::TwistReport;
use crate::torsor::{contracted_product, Bitorsor, Torsor};

/// Twist a G-object by a cocycle over the same Γ-group. Points and G-action
/// are unchanged; the new Γ-action is γ ⋆ x = c(γ)·(γ·x), and the result is
/// an object for the inner form of the Γ-group.
pub fn twist(xi: &GObject, c: &Cocycle) -> Result<GObject, TwistError> {
    if xi.gg() != c.gg() {
        return Err(TwistError::GammaGroupMismatch);
    }
    let gg = c.gg();
    let action: Vec<Vec<usize>> = gg
        .gamma()
        .elements()
        .map(|gamma| {
            (0..xi.size()).map(|x| xi.gact(c.value(gamma), xi.base().act(gamma, x))).collect()
        })
        .collect();
    let base = GammaSet::new(gg.gamma().clone(), xi.size(), action)?;
    let inner = c.inner_form();
    Ok(GObject::new(base, inner, xi.gaction_table().to_vec())?)
}

/// The automorphism Γ-group of a G-object: all G-equivariant bijections
/// (Γ ignored) with Γ acting by conjugation, together with ξ rebuilt as an
/// object under this group.
pub struct AutObject {
    pub aut: GammaGroup,
    /// `maps[a]` is the point permutation of automorphism `a`.
    pub maps: Vec<Vec<usize>>,
    /// ξ with its tautological Aut-action.
    pub as_aut_object: GObject,
}

pub fn aut_gamma_group(xi: &GObject) -> Result<AutObject, TwistError> {
    let mut maps = xi.plain_g_isoms(xi);
    if maps.len() > crate::group::DEFAULT_MAX_ORDER {
        return Err(TwistError::Group(crate::error::GroupError::OrderCap {
            order: maps.len(),
            cap: crate::group::DEFAULT_MAX_ORDER,
        }));
    }
    let id: Vec<usize> = (0..xi.size()).collect();
    let id_pos = maps.iter().position(|m| *m == id).expect("identity is G-equivariant");
    maps.swap(0, id_pos);
    maps[1..].sort_unstable();
    let index_of = |m: &[usize]| -> usize {
        maps.iter().position(|q| q == m).expect("automorphisms are closed under composition")
    };
    let n = maps.len();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let comp: Vec<usize> = (0..xi.size()).map(|x| maps[a][maps[b][x]]).collect();
            table[a][b] = index_of(&comp);
        }
    }
    let aut_group =
        std::sync::Arc::new(crate::group::FiniteGroup::from_cayley("Aut", &table)?);
    let gamma = xi.gg().gamma().clone();
    let act: Vec<Vec<usize>> = gamma
        .elements()
        .map(|gm| {
            let gm_inv = gamma.inv(gm);
            (0..n)
                .map(|a| {
                    let conj: Vec<usize> = (0..xi.size())
                        .map(|x| xi.base().act(gm, maps[a][xi.base().act(gm_inv, x)]))
                        .collect();
                    index_of(&conj)
                })
                .collect()
        })
        .collect();
    let aut = GammaGroup::new(gamma, aut_group, act)?;
    let as_aut_object = GObject::new(xi.base().clone(), aut.clone(), maps.clone())?;
    Ok(AutObject { aut, maps, as_aut_object })
}

/// The torsor of G-isomorphisms ξ → ξ′ under the automorphism Γ-group of ξ,
/// with the reconstruction witness: twisting ξ by the torsor's cocycle is
/// isomorphic to ξ′ via the basepoint map itself.
pub struct IsomTorsor {
    pub torsor: Torsor,
    /// Point i of the torsor is the bijection `maps[i]`.
    pub maps: Vec<Vec<usize>>,
    pub aut: AutObject,
    /// The point map realizing twist(ξ, cocycle) ≅ ξ′.
    pub reconstruction: Vec<usize>,
}

pub fn isom_object(xi: &GObject, xi2: &GObject) -> Result<IsomTorsor, TwistError> {
    if xi.gg() != xi2.gg() {
        return Err(TwistError::GammaGroupMismatch);
    }
    let maps = xi.plain_g_isoms(xi2);
    if maps.is_empty() {
        return Err(TwistError::NotLocallyIsomorphic);
    }
    let aut = aut_gamma_group(xi)?;
    let n = maps.len();
    let index_of = |m: &[usize]| -> usize {
        maps.iter().position(|q| q == m).expect("isom set closed under the torsor actions")
    };
    let gamma = xi.gg().gamma();
    // right action: f · a = f ∘ a
    let right: Vec<Vec<usize>> = aut
        .aut
        .group()
        .elements()
        .map(|a| {
            (0..n)
                .map(|i| {
                    let comp: Vec<usize> =
                        (0..xi.size()).map(|x| maps[i][aut.maps[a][x]]).collect();
                    index_of(&comp)
                })
                .collect()
        })
        .collect();
    // Γ acts by conjugation through both objects
    let gamma_action: Vec<Vec<usize>> = gamma
        .elements()
        .map(|gm| {
            let gm_inv = gamma.inv(gm);
            (0..n)
                .map(|i| {
                    let conj: Vec<usize> = (0..xi.size())
                        .map(|x| xi2.base().act(gm, maps[i][xi.base().act(gm_inv, x)]))
                        .collect();
                    index_of(&conj)
                })
                .collect()
        })
        .collect();
    let torsor = Torsor::new(aut.aut.clone(), n, right, gamma_action)?;
    // Reconstruction: twist ξ (as an Aut-object) by the cocycle at the
    // lexicographically smallest isomorphism; that very map is the witness.
    let c = torsor.cocycle_at(0);
    let twisted = twist(&aut.as_aut_object, &c)?;
    let witness = maps[0].clone();
    for gm in gamma.elements() {
        for x in 0..xi.size() {
            if witness[twisted.base().act(gm, x)] != xi2.base().act(gm, witness[x]) {
                return Err(TwistError::Internal(format!(
                    "reconstruction witness is not equivariant at gamma {gm}, point {x}"
                )));
            }
        }
    }
    Ok(IsomTorsor { torsor, maps, aut, reconstruction: witness })
}

/// The torsor of right-G-isomorphisms p → q, a right torsor under the inner
/// form of p. In basepoint coordinates the point set is G and γ sends a to
/// c_q(γ)·(γ⋆a)·c_p(γ)⁻¹.
pub fn twist_torsor(p: &Torsor, q: &Torsor) -> Result<Torsor, TwistError> {
    if p.gg() != q.gg() {
        return Err(TwistError::Torsor(crate::error::TorsorError::GammaGroupMismatch));
    }
    let gg = p.gg();
    let grp = gg.group();
    let cp = p.cocycle_at(0);
    let cq = q.cocycle_at(0);
    let inner = cp.inner_form();
    let right = grp.elements().map(|g| grp.elements().map(|x| grp.mul(x, g)).collect()).collect();
    let gamma_action = gg
        .gamma()
        .elements()
        .map(|gm| {
            grp.elements()
                .map(|a| {
                    grp.mul(grp.mul(cq.value(gm), gg.act(gm, a)), grp.inv(cp.value(gm)))
                })
                .collect()
        })
        .collect();
    Ok(Torsor::new(inner, grp.order(), right, gamma_action)?)
}

/// Composing two twists equals twisting by the composed cocycle; here the
/// identification is an equality of action tables and the witness is the
/// identity map.
pub fn verify_composition(
    c1: &Cocycle,
    c2: &Cocycle,
    xi: &GObject,
) -> Result<TwistReport, TwistError> {
    if *c2.gg() != c1.inner_form() {
        return Err(TwistError::NotInnerForm);
    }
    let mut report = TwistReport::new("composition");
    let once = twist(xi, c1)?;
    let again = twist(&once, c2)?;
    let composed = c1.compose_with(c2)?;
    let direct = twist(xi, &composed)?;
    let instance = format!("c1={:?} c2={:?}", c1.values(), c2.values());
    match first_table_difference(&again, &direct) {
        None => report.pass(instance, identity_witness(xi.size())),
        Some((gamma, point)) => report.fail(instance, gamma, point),
    }
    Ok(report)
}

/// The quotient Γ-group (Γ acting on G/K) and the canonical surjection, for
/// a Γ-stable normal subgroup K.
pub fn quotient_gamma_group(
    gg: &GammaGroup,
    k: &Subgroup,
) -> Result<(GammaGroup, GroupHom), TwistError> {
    if k.parent().as_ref() != gg.group().as_ref() {
        return Err(TwistError::Action(crate::error::ActionError::NotASubgroup));
    }
    k.require_normal()?;
    for gamma in gg.gamma().elements() {
        for &m in k.members() {
            if !k.contains(gg.act(gamma, m)) {
                return Err(TwistError::NotGammaStable { gamma, k: m });
            }
        }
    }
    let (quot, theta) = gg.group().quotient(k)?;
    let act_q: Vec<Vec<usize>> = gg
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
    let gg_quot = GammaGroup::new(gg.gamma().clone(), quot.clone(), act_q)?;
    Ok((gg_quot, theta))
}

/// Twisting a G/K-object by the pushed cocycle equals twisting its inflation
/// by the original cocycle.
pub fn verify_quotient(
    c: &Cocycle,
    k: &Subgroup,
    xi_bar: &GObject,
) -> Result<TwistReport, TwistError> {
    let gg = c.gg();
    let (gg_quot, theta) = quotient_gamma_group(gg, k)?;
    if *xi_bar.gg() != gg_quot {
        return Err(TwistError::GammaGroupMismatch);
    }
    let pushed = c.pushforward(&gg_quot, &theta)?;
    // inflation: g acts through its coset
    let inflated_action: Vec<Vec<usize>> =
        gg.group().elements().map(|g| xi_bar.gaction_table()[theta.apply(g)].clone()).collect();
    let inflated = GObject::new(xi_bar.base().clone(), gg.clone(), inflated_action)?;
    let lhs = twist(xi_bar, &pushed)?;
    let rhs = twist(&inflated, c)?;
    let mut report = TwistReport::new("quotient");
    let instance = format!("c={:?} |K|={}", c.values(), k.order());
    match first_table_difference_sets(lhs.base(), rhs.base()) {
        None => report.pass(instance, identity_witness(xi_bar.size())),
        Some((gamma, point)) => report.fail(instance, gamma, point),
    }
    Ok(report)
}

/// Restriction of the twist equals the twist of restrictions, as an equality
/// of action tables.
pub fn verify_base_change(
    c: &Cocycle,
    xi: &GObject,
    sub: &Subgroup,
) -> Result<TwistReport, TwistError> {
    let twisted = twist(xi, c)?;
    let lhs = twisted.restrict(sub)?;
    let rhs = twist(&xi.restrict(sub)?, &c.restrict(sub)?)?;
    let mut report = TwistReport::new("base-change");
    let instance = format!("c={:?} |sub|={}", c.values(), sub.order());
    match first_table_difference(&lhs, &rhs) {
        None => report.pass(instance, identity_witness(xi.size())),
        Some((gamma, point)) => report.fail(instance, gamma, point),
    }
    Ok(report)
}

/// Twisting commutes with disjoint union, product and orbit spaces.
pub fn verify_functor_image(
    c: &Cocycle,
    xi: &GObject,
    k: &Subgroup,
) -> Result<TwistReport, TwistError> {
    let mut report = TwistReport::new("functor-image");
    let tw = twist(xi, c)?;

    let union = xi.disjoint_union(xi);
    let lhs = twist(&union, c)?;
    let rhs = tw.disjoint_union(&tw);
    match first_table_difference(&lhs, &rhs) {
        None => report.pass(format!("disjoint-union c={:?}", c.values()), identity_witness(union.size())),
        Some((gamma, point)) => report.fail(format!("disjoint-union c={:?}", c.values()), gamma, point),
    }

    let prod = xi.product(xi);
    let lhs = twist(&prod, c)?;
    let rhs = tw.product(&tw);
    match first_table_difference(&lhs, &rhs) {
        None => report.pass(format!("product c={:?}", c.values()), identity_witness(prod.size())),
        Some((gamma, point)) => report.fail(format!("product c={:?}", c.values()), gamma, point),
    }

    // orbit space: quotienting the twist by K equals twisting the quotient
    // Γ-set; the K-orbits are untouched by twisting so the numbering agrees
    let (qt, _) = tw.orbit_space(k);
    let (qo, _) = xi.orbit_space(k);
    let twisted_quotient_action: Vec<Vec<usize>> = {
        // γ acts on orbit o by c(γ)·(γ·o) pushed to orbit indices
        let gg = c.gg();
        let mut proj = vec![0usize; xi.size()];
        for (idx, orbit) in orbit_list(xi, k).iter().enumerate() {
            for &x in orbit {
                proj[x] = idx;
            }
        }
        gg.gamma()
            .elements()
            .map(|gamma| {
                orbit_list(xi, k)
                    .iter()
                    .map(|o| proj[xi.gact(c.value(gamma), xi.base().act(gamma, o[0]))])
                    .collect()
            })
            .collect()
    };
    let instance = format!("orbit-space c={:?} |K|={}", c.values(), k.order());
    if qt.action_table() == twisted_quotient_action && qt.size() == qo.size() {
        report.pass(instance, identity_witness(qt.size()));
    } else {
        report.fail(instance, 0, 0);
    }
    Ok(report)
}

fn orbit_list(xi: &GObject, k: &Subgroup) -> Vec<Vec<usize>> {
    let (_, proj) = xi.orbit_space(k);
    let count = proj.iter().max().map(|m| m + 1).unwrap_or(0);
    let mut orbits = vec![Vec::new(); count];
    for (x, &o) in proj.iter().enumerate() {
        orbits[o].push(x);
    }
    orbits
}

/// The twisting bijection H¹(Γ, G′) → H¹(Γ, G) induced by a cocycle c with
/// inner form G′, together with the kernel characterization along a
/// homomorphism u: G → G₁.
pub fn h1_twist_bijection(
    c: &Cocycle,
    u: &GroupHom,
    target: &GammaGroup,
) -> Result<TwistReport, TwistError> {
    let gg = c.gg();
    let inner = c.inner_form();
    let mut report = TwistReport::new("h1-twist");

    let classes_inner = h1(&inner);
    let classes_orig = h1(gg);
    let class_index = |d: &Cocycle, classes: &[crate::gamma::CohomologyClass]| -> usize {
        classes
            .iter()
            .position(|cl| cl.members.iter().any(|m| m.values() == d.values()))
            .expect("classes partition the cocycles")
    };

    // well-defined and injective on classes, trivial class lands on [c]
    let mut images = Vec::new();
    let mut ok = true;
    for (i, cl) in classes_inner.iter().enumerate() {
        let mut image_indices: Vec<usize> = cl
            .members
            .iter()
            .map(|d| class_index(&c.compose_with(d).expect("inner-form cocycle"), &classes_orig))
            .collect();
        image_indices.sort_unstable();
        image_indices.dedup();
        if image_indices.len() != 1 {
            report.fail(format!("well-defined class={i}"), 0, 0);
            ok = false;
            continue;
        }
        report.pass(format!("well-defined class={i}"), Vec::new());
        images.push(image_indices[0]);
    }
    if ok {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let bijective = sorted.len() == classes_inner.len()
            && classes_inner.len() == classes_orig.len();
        if bijective {
            report.pass("bijection".to_string(), Vec::new());
        } else {
            report.fail("bijection".to_string(), 0, 0);
        }
        let trivial_pos = classes_inner.iter().position(|cl| cl.is_trivial_class).unwrap();
        let c_class = class_index(c, &classes_orig);
        if images[trivial_pos] == c_class {
            report.pass("trivial-to-base".to_string(), Vec::new());
        } else {
            report.fail("trivial-to-base".to_string(), 0, 0);
        }
    }

    // kernel characterization: u∘d ~ u∘c in H¹(Γ, G₁) iff pushing the
    // difference cocycle d·c⁻¹ into the inner form of u∘c is trivial
    let c1 = c.pushforward(target, u)?;
    let target_inner = c1.inner_form();
    for d in crate::gamma::enumerate_cocycles(gg) {
        let lhs = twisted_conjugate_equiv(
            &d.pushforward(target, u)?,
            &c1,
        )
        .is_some();
        let grp = gg.group();
        let diff_values: Vec<Elem> = gg
            .gamma()
            .elements()
            .map(|gm| grp.mul(d.value(gm), grp.inv(c.value(gm))))
            .collect();
        let diff = Cocycle::new(inner.clone(), diff_values)?;
        let pushed_diff = diff.pushforward(&target_inner, u)?;
        let rhs =
            twisted_conjugate_equiv(&pushed_diff, &Cocycle::trivial(target_inner.clone())).is_some();
        let instance = format!("kernel d={:?}", d.values());
        if lhs == rhs {
            report.pass(instance, Vec::new());
        } else {
            report.fail(instance, 0, 0);
        }
    }
    Ok(report)
}

/// The decomposition of the self-twisted torsor Isom(P, P).
#[derive(Clone, Debug)]
pub struct SelfTwistReport {
    /// One entry per Γ-orbit: the orbit and the stabilizer of its smallest
    /// point, normalized to the lexicographically smallest conjugate.
    pub components: Vec<(Vec<usize>, Subgroup)>,
    pub fixed_count: usize,
}

/// Orbits, stabilizers and fixed points of Isom(P, P) for P the torsor of c.
/// For Γ = G acting trivially and c the identity this is the conjugation
/// action of G on itself: one component per conjugacy class, stabilizers the
/// centralizers, |Z(G)| fixed points.
pub fn self_twist_decomposition(c: &Cocycle) -> Result<SelfTwistReport, TwistError> {
    let p = Torsor::from_cocycle(c);
    let st = twist_torsor(&p, &p)?;
    let gs = st.as_gamma_set();
    let gamma = c.gg().gamma();
    let components = gs
        .orbits()
        .into_iter()
        .map(|orbit| {
            let stab = gs.stabilizer(orbit[0]);
            let best = gamma
                .elements()
                .map(|g| {
                    let mut members: Vec<Elem> =
                        stab.members().iter().map(|&m| gamma.conj(g, m)).collect();
                    members.sort_unstable();
                    members
                })
                .min()
                .expect("group is nonempty");
            (orbit, gamma.subgroup(&best).expect("conjugate of a subgroup"))
        })
        .collect();
    let fixed_count = gs.fixed_points().len();
    Ok(SelfTwistReport { components, fixed_count })
}

fn identity_witness(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn first_table_difference(a: &GObject, b: &GObject) -> Option<(Elem, usize)> {
    if a.gaction_table() != b.gaction_table() {
        return Some((0, 0));
    }
    first_table_difference_sets(a.base(), b.base())
}

fn first_table_difference_sets(a: &GammaSet, b: &GammaSet) -> Option<(Elem, usize)> {
    if a.size() != b.size() {
        return Some((0, 0));
    }
    for gamma in a.gamma().elements() {
        for x in 0..a.size() {
            if a.act(gamma, x) != b.act(gamma, x) {
                return Some((gamma, x));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// The Isom(ξ, Φξ) ≅ P ∧ Aut(ξ) check over the full symmetric automorphism
// group, kept separate because Sym(ξ) is handled as raw permutations rather
// than a Cayley table.
// ---------------------------------------------------------------------------

pub mod sym {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    /// The idx-th permutation of 0..n in lexicographic order.
    fn nth_perm(n: usize, mut idx: usize) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(n);
        for slot in (0..n).rev() {
            let f = factorial(slot);
            let pick = idx / f;
            idx %= f;
            out.push(pool.remove(pick));
        }
        out
    }

    /// Lexicographic index of a permutation of 0..n.
    fn perm_index(p: &[usize]) -> usize {
        let n = p.len();
        let mut idx = 0;
        for i in 0..n {
            let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
            idx += smaller * factorial(n - 1 - i);
        }
        idx
    }

    fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        b.iter().map(|&i| a[i]).collect()
    }

    fn invert(a: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; a.len()];
        for (i, &v) in a.iter().enumerate() {
            inv[v] = i;
        }
        inv
    }

    /// Check that the Γ-set of all bijections ξ → Φ^c(ξ) is a right torsor
    /// under the full automorphism group of ξ isomorphic to the pushforward
    /// of the torsor of c, witnessed by an explicit equivariant bijection.
    pub fn verify_isom_sym(c: &Cocycle, xi: &GObject) -> Result<TwistReport, TwistError> {
        let twisted = twist(xi, c)?;
        let n = xi.size();
        let total = factorial(n);
        let gamma = xi.gg().gamma();
        let instance = format!("c={:?} |xi|={}", c.values(), n);
        let mut report = TwistReport::new("isom-sym");

        // Γ-action permutations on the two point sets
        let a_rows: Vec<Vec<usize>> =
            gamma.elements().map(|gm| xi.base().action_table()[gm].clone()).collect();
        let b_rows: Vec<Vec<usize>> =
            gamma.elements().map(|gm| twisted.base().action_table()[gm].clone()).collect();
        let a_inv: Vec<Vec<usize>> = a_rows.iter().map(|r| invert(r)).collect();

        // cocycle of the isom Γ-set at its lexicographically smallest point
        // (the identity bijection): γ·f = b_γ ∘ f ∘ a_γ⁻¹, so the cocycle
        // values are b_γ ∘ a_γ⁻¹
        let c_b: Vec<Vec<usize>> =
            gamma.elements().map(|gm| compose(&b_rows[gm], &a_inv[gm])).collect();
        // pushforward cocycle: the action permutation of c(γ) on ξ
        let c_p: Vec<Vec<usize>> =
            gamma.elements().map(|gm| xi.gaction_table()[c.value(gm)].clone()).collect();

        // twisted-conjugacy witness w: c_b(γ) = w⁻¹ ∘ c_p(γ) ∘ (γ⋆w)
        let mut witness: Option<Vec<usize>> = None;
        'search: for idx in 0..total {
            let w = nth_perm(n, idx);
            let w_inv = invert(&w);
            for gm in gamma.elements() {
                let conj_w = compose(&a_rows[gm], &compose(&w, &a_inv[gm]));
                let rhs = compose(&w_inv, &compose(&c_p[gm], &conj_w));
                if rhs != c_b[gm] {
                    continue 'search;
                }
            }
            witness = Some(w);
            break;
        }
        let Some(w) = witness else {
            report.fail(instance, 0, 0);
            return Ok(report);
        };

        // explicit torsor isomorphism Φ: pushforward-torsor → isom-set,
        // f ↦ identity-basepoint ∘ w ∘ f, checked equivariant pointwise
        // and on the right action generators
        let iso = |f_idx: usize| -> usize {
            let f = nth_perm(n, f_idx);
            perm_index(&compose(&w, &f))
        };
        // Γ-action on the pushforward torsor: f ↦ c_p(γ) ∘ (γ⋆f);
        // Γ-action on the isom set: f ↦ b_γ ∘ f ∘ a_γ⁻¹
        let mut seen = vec![false; total];
        for f_idx in 0..total {
            let image = iso(f_idx);
            if std::mem::replace(&mut seen[image], true) {
                report.fail(instance.clone(), 0, f_idx);
                return Ok(report);
            }
            let f = nth_perm(n, f_idx);
            for gm in gamma.elements() {
                let lhs = {
                    let gf = compose(&a_rows[gm], &compose(&f, &a_inv[gm]));
                    iso(perm_index(&compose(&c_p[gm], &gf)))
                };
                let rhs = {
                    let img = nth_perm(n, image);
                    perm_index(&compose(&b_rows[gm], &compose(&img, &a_inv[gm])))
                };
                if lhs != rhs {
                    report.fail(instance.clone(), gm, f_idx);
                    return Ok(report);
                }
            }
        }
        // right-equivariance on a couple of generators of Sym(ξ)
        let gens: Vec<Vec<usize>> = sym_generators(n);
        for f_idx in [0usize, total / 2, total - 1] {
            let f = nth_perm(n, f_idx);
            for s in &gens {
                let lhs = iso(perm_index(&compose(&f, s)));
                let rhs = perm_index(&compose(&nth_perm(n, iso(f_idx)), s));
                if lhs != rhs {
                    report.fail(instance.clone(), 0, f_idx);
                    return Ok(report);
                }
            }
        }
        report.pass(instance, w);
        Ok(report)
    }

    fn sym_generators(n: usize) -> Vec<Vec<usize>> {
        if n <= 1 {
            return vec![(0..n).collect()];
        }
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        vec![swap, cycle]
    }
}

/// Torsor route and contracted-product route to Isom(p, q) agree.
pub fn twist_torsor_matches_contracted(p: &Torsor, q: &Torsor) -> Result<bool, TwistError> {
    let direct = twist_torsor(p, q)?;
    let qb = Bitorsor::from_right_torsor(q);
    let pb = Bitorsor::from_right_torsor(p);
    let prod = contracted_product(&qb, &pb.inverse())?;
    Ok(direct.is_isomorphic(&prod.right_torsor())?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{conjugation_action, enumerate_cocycles, inversion_action};
    use crate::group::{cyclic, quaternion8, symmetric3};

    fn z2_s3_trivial() -> GammaGroup {
        GammaGroup::trivial_action(cyclic(2), symmetric3())
    }

    fn regular_object(gg: &GammaGroup) -> GObject {
        let grp = gg.group();
        let base = GammaSet::new(
            gg.gamma().clone(),
            grp.order(),
            gg.gamma().elements().map(|gm| grp.elements().map(|x| gg.act(gm, x)).collect()).collect(),
        )
        .unwrap();
        let gaction =
            grp.elements().map(|g| grp.elements().map(|x| grp.mul(g, x)).collect()).collect();
        GObject::new(base, gg.clone(), gaction).unwrap()
    }

    #[test]
    fn twisting_by_the_trivial_cocycle_is_the_identity() {
        let gg = z2_s3_trivial();
        let xi = regular_object(&gg);
        let tw = twist(&xi, &Cocycle::trivial(gg)).unwrap();
        assert_eq!(tw, xi);
    }

    #[test]
    fn twist_then_inverse_twist_is_the_identity() {
        for gg in [z2_s3_trivial(), inversion_action(3), conjugation_action(&symmetric3())] {
            let xi = regular_object(&gg);
            for c in enumerate_cocycles(&gg) {
                let tw = twist(&xi, &c).unwrap();
                let back = twist(&tw, &c.inverse_cocycle()).unwrap();
                assert_eq!(back, xi);
            }
        }
    }

    #[test]
    fn twist_preserves_points_and_g_action() {
        let gg = z2_s3_trivial();
        let xi = regular_object(&gg);
        let c = Cocycle::new(gg, vec![0, 1]).unwrap();
        let tw = twist(&xi, &c).unwrap();
        assert_eq!(tw.size(), xi.size());
        assert_eq!(tw.gaction_table(), xi.gaction_table());
    }

    #[test]
    fn identity_twist_of_regular_object_is_free() {
        // Γ = G = S3 trivial action, c = id: new Γ-action γ ⋆ x = γ·x
        let gg = GammaGroup::trivial_action(symmetric3(), symmetric3());
        let xi = regular_object(&gg);
        let c = Cocycle::new(gg, (0..6).collect()).unwrap();
        let tw = twist(&xi, &c).unwrap();
        assert!(tw.base().fixed_points().is_empty());
        for gm in symmetric3().elements() {
            for x in symmetric3().elements() {
                assert_eq!(tw.base().act(gm, x), symmetric3().mul(gm, x));
            }
        }
    }

    #[test]
    fn composition_of_twists_multiplies_cocycles() {
        let gg = z2_s3_trivial();
        let xi = regular_object(&gg);
        for c1 in enumerate_cocycles(&gg) {
            let inner = c1.inner_form();
            for c2 in enumerate_cocycles(&inner) {
                let report = verify_composition(&c1, &c2, &xi).unwrap();
                assert!(report.passing(), "{report:?}");
            }
        }
    }

    #[test]
    fn isom_object_of_equal_objects_is_the_trivial_torsor() {
        let gg = z2_s3_trivial();
        let xi = regular_object(&gg);
        let isom = isom_object(&xi, &xi).unwrap();
        assert!(!isom.torsor.fixed_points().is_empty());
        assert_eq!(isom.maps.len(), 6); // right translations
    }

    #[test]
    fn isom_object_rejects_non_isomorphic_objects() {
        let gg = z2_s3_trivial();
        let xi = regular_object(&gg);
        // conjugation object has a different orbit structure as a G-set
        let grp = gg.group();
        let conj: Vec<Vec<usize>> =
            grp.elements().map(|a| grp.elements().map(|x| grp.conj(a, x)).collect()).collect();
        let base = GammaSet::trivial(gg.gamma().clone(), 6);
        let other = GObject::new(base, gg.clone(), conj).unwrap();
        assert!(matches!(
            isom_object(&xi, &other),
            Err(TwistError::NotLocallyIsomorphic)
        ));
    }

    #[test]
    fn isom_object_reconstructs_central_twists() {
        // central-valued cocycles keep the twist inside the same C_G
        let gg = GammaGroup::trivial_action(cyclic(2), quaternion8());
        let xi = regular_object(&gg);
        let c = Cocycle::new(gg.clone(), vec![0, 1]).unwrap(); // -1 is central
        let tw = twist(&xi, &c).unwrap();
        let tw_same = GObject::new(tw.base().clone(), gg.clone(), tw.gaction_table().to_vec())
            .expect("central twist stays equivariant over the original gamma-group");
        let isom = isom_object(&xi, &tw_same).unwrap();
        assert!(isom.torsor.fixed_points().is_empty());
        assert_eq!(isom.reconstruction.len(), 8);
        // the torsor's cocycle is the image of c in Aut(ξ): right
        // translation by the (central) cocycle value
        let q8 = quaternion8();
        let extracted = isom.torsor.cocycle_at(0);
        for gm in 0..2 {
            let expected_map: Vec<usize> = q8.elements().map(|x| q8.mul(x, c.value(gm))).collect();
            assert_eq!(isom.aut.maps[extracted.value(gm)], expected_map);
        }
    }

    #[test]
    fn twist_torsor_fixed_points_detect_isomorphism() {
        for gg in [z2_s3_trivial(), inversion_action(4)] {
            let cocycles = enumerate_cocycles(&gg);
            for cp in &cocycles {
                for cq in &cocycles {
                    let p = Torsor::from_cocycle(cp);
                    let q = Torsor::from_cocycle(cq);
                    let tt = twist_torsor(&p, &q).unwrap();
                    let same = twisted_conjugate_equiv(cp, cq).is_some();
                    assert_eq!(!tt.fixed_points().is_empty(), same);
                }
            }
        }
    }

    #[test]
    fn twist_torsor_agrees_with_contracted_product() {
        let gg = z2_s3_trivial();
        let cocycles = enumerate_cocycles(&gg);
        for cp in &cocycles {
            for cq in &cocycles {
                let p = Torsor::from_cocycle(cp);
                let q = Torsor::from_cocycle(cq);
                assert!(twist_torsor_matches_contracted(&p, &q).unwrap());
            }
        }
    }

    #[test]
    fn twisting_by_the_trivial_torsor_recovers_p_inverse() {
        // Isom(P, G_d) ≅ P⁰ as right torsors under the inner form
        let gg = z2_s3_trivial();
        for c in enumerate_cocycles(&gg) {
            let p = Torsor::from_cocycle(&c);
            let gd = Torsor::trivial(gg.clone());
            let tt = twist_torsor(&p, &gd).unwrap();
            let p0 = Bitorsor::from_right_torsor(&p).inverse();
            // p0's right group is the inner form of p; compare cocycles
            let lhs = tt.cocycle_at(0);
            let rhs = p0.right_cocycle_at(0);
            assert!(twisted_conjugate_equiv(&lhs, &rhs).is_some());
        }
    }

    #[test]
    fn self_twist_of_s3_matches_its_class_structure() {
        let gg = GammaGroup::trivial_action(symmetric3(), symmetric3());
        let c = Cocycle::new(gg, (0..6).collect()).unwrap();
        let report = self_twist_decomposition(&c).unwrap();
        assert_eq!(report.components.len(), 3);
        let stab_orders: Vec<usize> =
            report.components.iter().map(|(_, s)| s.order()).collect();
        assert_eq!(stab_orders, vec![6, 2, 3]);
        assert_eq!(report.fixed_count, 1);
    }

    #[test]
    fn self_twist_of_abelian_group_is_all_fixed() {
        let gg = GammaGroup::trivial_action(cyclic(3), cyclic(3));
        let c = Cocycle::new(gg, (0..3).collect()).unwrap();
        let report = self_twist_decomposition(&c).unwrap();
        assert_eq!(report.components.len(), 3);
        assert_eq!(report.fixed_count, 3);
    }

    #[test]
    fn self_twist_of_q8() {
        let q8 = quaternion8();
        let gg = GammaGroup::trivial_action(q8.clone(), q8.clone());
        let c = Cocycle::new(gg, (0..8).collect()).unwrap();
        let report = self_twist_decomposition(&c).unwrap();
        assert_eq!(report.components.len(), 5);
        assert_eq!(report.fixed_count, 2);
        let stab_orders: Vec<usize> =
            report.components.iter().map(|(_, s)| s.order()).collect();
        assert_eq!(stab_orders, vec![8, 8, 4, 4, 4]);
    }

    #[test]
    fn base_change_commutes_with_twisting() {
        let gg = conjugation_action(&symmetric3());
        let xi = regular_object(&gg);
        let a3 = symmetric3().subgroup(&[0, 4, 5]).unwrap();
        for c in enumerate_cocycles(&gg) {
            let report = verify_base_change(&c, &xi, &a3).unwrap();
            assert!(report.passing());
        }
    }

    #[test]
    fn quotient_twist_matches_inflated_twist() {
        let gg = z2_s3_trivial();
        let s3 = symmetric3();
        let a3 = s3.subgroup(&[0, 4, 5]).unwrap();
        // ξ̄: the 2-point G/K-object, regular under G/K
        let (quot, theta) = s3.quotient(&a3).unwrap();
        let gg_quot = GammaGroup::trivial_action(cyclic(2), quot.clone());
        let base = GammaSet::trivial(cyclic(2), 2);
        let gaction =
            quot.elements().map(|g| quot.elements().map(|x| quot.mul(g, x)).collect()).collect();
        let xi_bar = GObject::new(base, gg_quot, gaction).unwrap();
        let _ = theta;
        for c in enumerate_cocycles(&gg) {
            let report = verify_quotient(&c, &a3, &xi_bar).unwrap();
            assert!(report.passing());
        }
    }

    #[test]
    fn sym_route_isom_check_passes_for_small_objects() {
        let gg = inversion_action(3);
        let xi = regular_object(&gg);
        for c in enumerate_cocycles(&gg) {
            let report = sym::verify_isom_sym(&c, &xi).unwrap();
            assert!(report.passing(), "{report:?}");
        }
    }

    #[test]
    fn twisting_is_functorial_on_morphisms() {
        // the diagonal ξ → ξ × ξ and the projection back are morphisms of
        // G-objects; the same point maps stay equivariant after twisting
        for gg in [z2_s3_trivial(), inversion_action(3), conjugation_action(&symmetric3())] {
            let xi = regular_object(&gg);
            let sq = xi.product(&xi);
            let n = xi.size();
            let diag: Vec<usize> = (0..n).map(|x| x * n + x).collect();
            let proj: Vec<usize> = (0..n * n).map(|p| p / n).collect();
            for c in enumerate_cocycles(&gg) {
                let txi = twist(&xi, &c).unwrap();
                let tsq = twist(&sq, &c).unwrap();
                for gm in gg.gamma().elements() {
                    for x in 0..n {
                        assert_eq!(
                            diag[txi.base().act(gm, x)],
                            tsq.base().act(gm, diag[x]),
                            "diagonal stops being equivariant after twisting"
                        );
                    }
                    for p in 0..n * n {
                        assert_eq!(
                            proj[tsq.base().act(gm, p)],
                            txi.base().act(gm, proj[p]),
                            "projection stops being equivariant after twisting"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_by_the_trivial_subgroup_is_the_identity_check() {
        let gg = z2_s3_trivial();
        let k = symmetric3().subgroup(&[0]).unwrap();
        // G/1 ≅ G: the regular object over the quotient gamma-group
        let (gg_quot, _) = quotient_gamma_group(&gg, &k).unwrap();
        let xi_bar = {
            let grp = gg_quot.group();
            let base = GammaSet::trivial(gg_quot.gamma().clone(), grp.order());
            let gaction = grp
                .elements()
                .map(|g| grp.elements().map(|x| grp.mul(g, x)).collect())
                .collect();
            GObject::new(base, gg_quot.clone(), gaction).unwrap()
        };
        for c in enumerate_cocycles(&gg) {
            let report = verify_quotient(&c, &k, &xi_bar).unwrap();
            assert!(report.passing());
        }
    }

    use crate::gamma::twisted_conjugate_equiv;
}
