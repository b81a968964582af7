//! The built-in verification corpus.
//!
//! Fixed lists of Γ-groups, G-objects, covers and target torsors over small
//! groups. Every verification suite and the acceptance tests draw their
//! instances from here, so the corpus is part of the library rather than
//! test support.

use std::sync::Arc;

use crate::cover::CoverSpec;
use crate::gamma::{conjugation_action, inversion_action, Cocycle, GammaGroup};
use crate::group::{
    cyclic, dihedral, direct_product, klein4, quaternion8, symmetric, symmetric3, Elem,
    FiniteGroup, GroupHom,
};
use crate::gset::{GammaSet, GObject};

/// A named Γ-group instance.
#[derive(Clone)]
pub struct GammaGroupInstance {
    pub name: &'static str,
    pub gg: GammaGroup,
}

/// Γ = Z2 acting on S3 by conjugation with a transposition.
fn z2_on_s3_by_conjugation() -> GammaGroup {
    let s3 = symmetric3();
    let act = vec![
        s3.elements().collect(),
        s3.elements().map(|x| s3.conj(1, x)).collect(),
    ];
    GammaGroup::new(cyclic(2), s3, act).unwrap()
}

/// Γ = Z2 acting on D4 by conjugation with the rotation r.
fn z2_on_d4_by_conjugation() -> GammaGroup {
    let d4 = dihedral(4);
    let act = vec![
        d4.elements().collect(),
        d4.elements().map(|x| d4.conj(1, x)).collect(),
    ];
    GammaGroup::new(cyclic(2), d4, act).unwrap()
}

/// Γ = Z2 acting on Q8 by conjugation with i.
fn z2_on_q8_by_conjugation() -> GammaGroup {
    let q8 = quaternion8();
    let act = vec![
        q8.elements().collect(),
        q8.elements().map(|x| q8.conj(2, x)).collect(),
    ];
    GammaGroup::new(cyclic(2), q8, act).unwrap()
}

/// Γ = Z4 acting on Z5 through the order-4 automorphism x ↦ 2x.
fn z4_on_z5() -> GammaGroup {
    let z5 = cyclic(5);
    let z4 = cyclic(4);
    let act = (0..4)
        .map(|k| {
            let mut m = 1usize;
            for _ in 0..k {
                m = (m * 2) % 5;
            }
            z5.elements().map(|x| (x * m) % 5).collect()
        })
        .collect();
    GammaGroup::new(z4, z5, act).unwrap()
}

/// Γ = Z6 acting on Z7 through x ↦ 3x (3 generates the units mod 7).
fn z6_on_z7() -> GammaGroup {
    let z7 = cyclic(7);
    let z6 = cyclic(6);
    let act = (0..6)
        .map(|k| {
            let mut m = 1usize;
            for _ in 0..k {
                m = (m * 3) % 7;
            }
            z7.elements().map(|x| (x * m) % 7).collect()
        })
        .collect();
    GammaGroup::new(z6, z7, act).unwrap()
}

/// Γ = V4 with one factor inverting Z3.
fn v4_on_z3() -> GammaGroup {
    let z3 = cyclic(3);
    let v4 = klein4();
    let id: Vec<Elem> = z3.elements().collect();
    let inv: Vec<Elem> = z3.elements().map(|x| (3 - x) % 3).collect();
    // elements of V4 are bit pairs; the low bit inverts
    let act = (0..4).map(|e| if e & 1 == 1 { inv.clone() } else { id.clone() }).collect();
    GammaGroup::new(v4, z3, act).unwrap()
}

/// The standard Γ-group corpus: |Γ| ≤ 6, |G| ≤ 8, trivial actions plus a
/// nontrivial action for each coefficient group that admits one.
pub fn gamma_groups() -> Vec<GammaGroupInstance> {
    vec![
        GammaGroupInstance { name: "z2-z2-trivial", gg: GammaGroup::trivial_action(cyclic(2), cyclic(2)) },
        GammaGroupInstance { name: "z2-z3-trivial", gg: GammaGroup::trivial_action(cyclic(2), cyclic(3)) },
        GammaGroupInstance { name: "z2-z3-inversion", gg: inversion_action(3) },
        GammaGroupInstance { name: "z2-z4-trivial", gg: GammaGroup::trivial_action(cyclic(2), cyclic(4)) },
        GammaGroupInstance { name: "z2-z4-inversion", gg: inversion_action(4) },
        GammaGroupInstance { name: "z2-s3-trivial", gg: GammaGroup::trivial_action(cyclic(2), symmetric3()) },
        GammaGroupInstance { name: "z2-s3-conjugation", gg: z2_on_s3_by_conjugation() },
        GammaGroupInstance { name: "z3-z3-trivial", gg: GammaGroup::trivial_action(cyclic(3), cyclic(3)) },
        GammaGroupInstance { name: "v4-z3-inversion", gg: v4_on_z3() },
        GammaGroupInstance { name: "z4-z5-mult2", gg: z4_on_z5() },
        GammaGroupInstance { name: "s3-s3-trivial", gg: GammaGroup::trivial_action(symmetric3(), symmetric3()) },
        GammaGroupInstance { name: "s3-s3-conjugation", gg: conjugation_action(&symmetric3()) },
        GammaGroupInstance { name: "z2-d4-trivial", gg: GammaGroup::trivial_action(cyclic(2), dihedral(4)) },
        GammaGroupInstance { name: "z2-d4-conjugation", gg: z2_on_d4_by_conjugation() },
        GammaGroupInstance { name: "z2-q8-trivial", gg: GammaGroup::trivial_action(cyclic(2), quaternion8()) },
        GammaGroupInstance { name: "z2-q8-conjugation", gg: z2_on_q8_by_conjugation() },
        GammaGroupInstance { name: "z6-z7-mult3", gg: z6_on_z7() },
    ]
}

/// G acting on itself by left translation, Γ through its action on G.
pub fn regular_object(gg: &GammaGroup) -> GObject {
    let grp = gg.group();
    let base = GammaSet::new(
        gg.gamma().clone(),
        grp.order(),
        gg.gamma().elements().map(|gm| grp.elements().map(|x| gg.act(gm, x)).collect()).collect(),
    )
    .expect("automorphism action");
    let gaction =
        grp.elements().map(|g| grp.elements().map(|x| grp.mul(g, x)).collect()).collect();
    GObject::new(base, gg.clone(), gaction).expect("translation is equivariant")
}

/// The one-point object.
pub fn point_object(gg: &GammaGroup) -> GObject {
    let base = GammaSet::trivial(gg.gamma().clone(), 1);
    let gaction = vec![vec![0]; gg.group().order()];
    GObject::new(base, gg.clone(), gaction).expect("a point is equivariant")
}

/// G acting on itself by conjugation, Γ through its action on G.
pub fn conjugation_object(gg: &GammaGroup) -> GObject {
    let grp = gg.group();
    let base = GammaSet::new(
        gg.gamma().clone(),
        grp.order(),
        gg.gamma().elements().map(|gm| grp.elements().map(|x| gg.act(gm, x)).collect()).collect(),
    )
    .expect("automorphism action");
    let gaction =
        grp.elements().map(|g| grp.elements().map(|x| grp.conj(g, x)).collect()).collect();
    GObject::new(base, gg.clone(), gaction).expect("conjugation is equivariant")
}

/// The object corpus for a Γ-group. Objects with at most |G| points first;
/// the disjoint union comes last so callers needing small symmetric groups
/// can truncate.
pub fn objects(gg: &GammaGroup) -> Vec<GObject> {
    let regular = regular_object(gg);
    let point = point_object(gg);
    let conj = conjugation_object(gg);
    let union = regular.disjoint_union(&point);
    vec![regular, point, conj, union]
}

/// A named cover instance.
#[derive(Clone)]
pub struct CoverInstance {
    pub name: &'static str,
    pub cover: CoverSpec,
}

/// Π = S3 ↠ Z2 by sign with φ = id: the running example.
pub fn s3_sign_cover() -> CoverSpec {
    let s3 = symmetric3();
    let z2 = cyclic(2);
    let sgn = GroupHom::new(s3.clone(), z2, vec![0, 1, 1, 1, 0, 0]).unwrap();
    CoverSpec::new(sgn, GroupHom::identity(&s3)).unwrap()
}

fn z4_mod2_cover() -> CoverSpec {
    let z4 = cyclic(4);
    let u = GroupHom::new(z4.clone(), cyclic(2), vec![0, 1, 0, 1]).unwrap();
    CoverSpec::new(u, GroupHom::identity(&z4)).unwrap()
}

fn z6_to_z3_cover() -> CoverSpec {
    let z6 = cyclic(6);
    let u = GroupHom::new(z6.clone(), cyclic(2), vec![0, 1, 0, 1, 0, 1]).unwrap();
    let phi = GroupHom::new(z6.clone(), cyclic(3), vec![0, 1, 2, 0, 1, 2]).unwrap();
    CoverSpec::new(u, phi).unwrap()
}

fn z6_identity_cover() -> CoverSpec {
    let z6 = cyclic(6);
    let u = GroupHom::new(z6.clone(), cyclic(2), vec![0, 1, 0, 1, 0, 1]).unwrap();
    CoverSpec::new(u, GroupHom::identity(&z6)).unwrap()
}

fn s3_product_cover() -> CoverSpec {
    let (_, proj_s3, proj_z2) = direct_product(&symmetric3(), &cyclic(2));
    CoverSpec::new(proj_z2, proj_s3).unwrap()
}

fn s3_sign_to_z2_cover() -> CoverSpec {
    let s3 = symmetric3();
    let sgn = GroupHom::new(s3.clone(), cyclic(2), vec![0, 1, 1, 1, 0, 0]).unwrap();
    CoverSpec::new(sgn.clone(), sgn).unwrap()
}

fn d4_mod_rotations_cover() -> CoverSpec {
    let d4 = dihedral(4);
    let rot = d4.subgroup(&[0, 1, 2, 3]).unwrap();
    let (_, theta) = d4.quotient(&rot).unwrap();
    let u = GroupHom::new(d4.clone(), cyclic(2), theta.map().to_vec()).unwrap();
    CoverSpec::new(u, GroupHom::identity(&d4)).unwrap()
}

fn q8_mod_i_cover() -> CoverSpec {
    let q8 = quaternion8();
    let sub = q8.subgroup(&[0, 1, 2, 3]).unwrap();
    let (_, theta) = q8.quotient(&sub).unwrap();
    let u = GroupHom::new(q8.clone(), cyclic(2), theta.map().to_vec()).unwrap();
    CoverSpec::new(u, GroupHom::identity(&q8)).unwrap()
}

fn v4_projection_cover() -> CoverSpec {
    let v4 = klein4();
    let u = GroupHom::new(v4.clone(), cyclic(2), vec![0, 0, 1, 1]).unwrap();
    let phi = GroupHom::new(v4.clone(), cyclic(2), vec![0, 1, 0, 1]).unwrap();
    CoverSpec::new(u, phi).unwrap()
}

/// Σ of the cover corpus; the S3 sign cover and two covers without sections
/// are always present.
pub fn covers() -> Vec<CoverInstance> {
    vec![
        CoverInstance { name: "s3-sign", cover: s3_sign_cover() },
        CoverInstance { name: "z4-mod2", cover: z4_mod2_cover() },
        CoverInstance { name: "z6-to-z3", cover: z6_to_z3_cover() },
        CoverInstance { name: "z6-identity", cover: z6_identity_cover() },
        CoverInstance { name: "s3-product", cover: s3_product_cover() },
        CoverInstance { name: "s3-sign-to-z2", cover: s3_sign_to_z2_cover() },
        CoverInstance { name: "d4-mod-rotations", cover: d4_mod_rotations_cover() },
        CoverInstance { name: "q8-mod-i", cover: q8_mod_i_cover() },
        CoverInstance { name: "v4-projection", cover: v4_projection_cover() },
    ]
}

/// Every (cover, target) pair: all trivial-action cocycles Γ → G per cover.
pub fn cover_target_pairs() -> Vec<(CoverInstance, Cocycle)> {
    let mut out = Vec::new();
    for inst in covers() {
        let gg = inst.cover.target_gamma_group();
        for c in crate::gamma::enumerate_cocycles(&gg) {
            out.push((inst.clone(), c));
        }
    }
    out
}

/// A non-Galois test instance: cover, ambient embedding, target cocycle into
/// the symmetric group, and the expected outcome of the direct oracle.
pub struct NonGaloisInstance {
    pub name: &'static str,
    pub cover: CoverSpec,
    pub nu: GroupHom,
    pub psi: Cocycle,
}

/// ν: D4 ↪ S4 through the vertex action of `dihedral(4)`.
pub fn d4_in_s4() -> GroupHom {
    let d4 = dihedral(4);
    let s4 = symmetric(4);
    let perms: [[usize; 4]; 8] = [
        [0, 1, 2, 3],
        [1, 2, 3, 0],
        [2, 3, 0, 1],
        [3, 0, 1, 2],
        [0, 3, 2, 1],
        [1, 0, 3, 2],
        [2, 1, 0, 3],
        [3, 2, 1, 0],
    ];
    let map = perms
        .iter()
        .map(|p| crate::group::symmetric_index(&s4, p).expect("vertex permutations lie in S4"))
        .collect();
    GroupHom::new(d4, s4, map).unwrap()
}

pub fn nongalois_instances() -> Vec<NonGaloisInstance> {
    let mut out = Vec::new();

    // n = 3: the S3 sign cover with ν = id
    let s3 = symmetric3();
    let nu3 = GroupHom::identity(&s3);
    let cover3 = s3_sign_cover();
    let sn3 = GammaGroup::trivial_action(cyclic(2), s3.clone());
    out.push(NonGaloisInstance {
        name: "s3-transposition",
        cover: cover3.clone(),
        nu: nu3.clone(),
        psi: Cocycle::new(sn3.clone(), vec![0, 1]).unwrap(),
    });
    out.push(NonGaloisInstance {
        name: "s3-trivial-target",
        cover: cover3.clone(),
        nu: nu3.clone(),
        psi: Cocycle::new(sn3, vec![0, 0]).unwrap(),
    });

    // n = 3 with G = Z3 (Lagrange-empty embedding set)
    let z6 = cyclic(6);
    let u = GroupHom::new(z6.clone(), cyclic(2), vec![0, 1, 0, 1, 0, 1]).unwrap();
    let phi = GroupHom::new(z6.clone(), cyclic(3), vec![0, 1, 2, 0, 1, 2]).unwrap();
    let cover_z3 = CoverSpec::new(u, phi).unwrap();
    let nu_z3 = GroupHom::new(cyclic(3), s3.clone(), vec![0, 4, 5]).unwrap();
    out.push(NonGaloisInstance {
        name: "z3-lagrange",
        cover: cover_z3,
        nu: nu_z3,
        psi: Cocycle::new(GammaGroup::trivial_action(cyclic(2), s3), vec![0, 1]).unwrap(),
    });

    // n = 4: D4 inside S4
    let (_, proj_d4, proj_z2) = direct_product(&dihedral(4), &cyclic(2));
    let cover4 = CoverSpec::new(proj_z2, proj_d4).unwrap();
    let s4 = symmetric(4);
    let nu4 = d4_in_s4();
    let sn4 = GammaGroup::trivial_action(cyclic(2), s4.clone());
    let t01 = crate::group::symmetric_index(&s4, &[1, 0, 2, 3]).unwrap();
    let dbl = crate::group::symmetric_index(&s4, &[1, 0, 3, 2]).unwrap();
    out.push(NonGaloisInstance {
        name: "d4-outside-transposition",
        cover: cover4.clone(),
        nu: nu4.clone(),
        psi: Cocycle::new(sn4.clone(), vec![0, t01]).unwrap(),
    });
    out.push(NonGaloisInstance {
        name: "d4-double-transposition",
        cover: cover4,
        nu: nu4,
        psi: Cocycle::new(sn4.clone(), vec![0, dbl]).unwrap(),
    });

    // n = 4 with G = Z4 generated by a 4-cycle: the specializations are
    // double transpositions, never plain transpositions
    let (_, proj_z4, proj_z2b) = direct_product(&cyclic(4), &cyclic(2));
    let cover_z4 = CoverSpec::new(proj_z2b, proj_z4).unwrap();
    let four_cycle = crate::group::symmetric_index(&s4, &[1, 2, 3, 0]).unwrap();
    let mut nu_map = vec![0usize; 4];
    let mut power = 0usize; // identity of S4
    for (k, slot) in nu_map.iter_mut().enumerate() {
        if k > 0 {
            power = s4.mul(power, four_cycle);
        }
        *slot = power;
    }
    let nu_z4 = GroupHom::new(cyclic(4), s4.clone(), nu_map).unwrap();
    out.push(NonGaloisInstance {
        name: "z4-transposition-target",
        cover: cover_z4,
        nu: nu_z4,
        psi: Cocycle::new(sn4, vec![0, t01]).unwrap(),
    });
    out
}

/// Groups for the self-twist decomposition suite: Γ = G, trivial action,
/// identity cocycle.
pub fn self_twist_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    vec![
        ("z3", cyclic(3)),
        ("s3", symmetric3()),
        ("q8", quaternion8()),
        ("d4", dihedral(4)),
    ]
}

/// The identity cocycle over (Γ = G, trivial action).
pub fn identity_cocycle(g: &Arc<FiniteGroup>) -> Cocycle {
    let gg = GammaGroup::trivial_action(g.clone(), g.clone());
    Cocycle::new(gg, g.elements().collect()).expect("the identity map is a homomorphism")
}
