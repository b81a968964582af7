//! Right torsors, bitorsors, contracted products and inverses.
//!
//! A `Torsor` is a Γ-set with a simply transitive right G-action satisfying
//! γ·(x·g) = (γ·x)·(γ⋆g). Picking a basepoint p₀ produces the cocycle
//! γ·p₀ = p₀·c(γ); conversely a cocycle rebuilds the torsor on the points of
//! G with x·g by multiplication and γ·x = c(γ)·(γ⋆x).
//!
//! Right action tables are validated as left actions of the opposite group,
//! so a single table shape and one validation path serve both sides.

use std::fmt;

use crate::error::TorsorError;
use crate::gamma::{Cocycle, GammaGroup};
use crate::group::Elem;
use crate::gset::{validate_action_table, GammaSet};

/// A right G-torsor in the category of Γ-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct Torsor {
    gg: GammaGroup,
    size: usize,
    /// `right[g][x]` = x·g
    right: Vec<Vec<usize>>,
    /// `gamma_action[γ][x]` = γ·x
    gamma_action: Vec<Vec<usize>>,
}

impl fmt::Debug for Torsor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Torsor({} points under {})", self.size, self.gg.group().name())
    }
}

impl Torsor {
    pub fn new(
        gg: GammaGroup,
        size: usize,
        right: Vec<Vec<usize>>,
        gamma_action: Vec<Vec<usize>>,
    ) -> Result<Self, TorsorError> {
        validate_action_table(&gg.group().opposite(), size, &right)?;
        validate_action_table(gg.gamma(), size, &gamma_action)?;
        if size != gg.group().order() {
            return Err(TorsorError::NotSimplyTransitive(size, gg.group().order()));
        }
        for x in 0..size {
            let mut seen = vec![false; size];
            for g in gg.group().elements() {
                if std::mem::replace(&mut seen[right[g][x]], true) {
                    return Err(TorsorError::NotSimplyTransitive(size, gg.group().order()));
                }
            }
        }
        for gamma in gg.gamma().elements() {
            for g in gg.group().elements() {
                for x in 0..size {
                    let lhs = gamma_action[gamma][right[g][x]];
                    let rhs = right[gg.act(gamma, g)][gamma_action[gamma][x]];
                    if lhs != rhs {
                        return Err(TorsorError::Action(
                            crate::error::ActionError::NotEquivariant { gamma, g, point: x },
                        ));
                    }
                }
            }
        }
        Ok(Torsor { gg, size, right, gamma_action })
    }

    /// The torsor on the points of G defined by a cocycle.
    pub fn from_cocycle(c: &Cocycle) -> Torsor {
        let gg = c.gg().clone();
        let grp = gg.group();
        let size = grp.order();
        let right = grp.elements().map(|g| grp.elements().map(|x| grp.mul(x, g)).collect()).collect();
        let gamma_action = gg
            .gamma()
            .elements()
            .map(|gamma| {
                grp.elements().map(|x| grp.mul(c.value(gamma), gg.act(gamma, x))).collect()
            })
            .collect();
        Torsor { gg, size, right, gamma_action }
    }

    /// The trivial torsor G_d.
    pub fn trivial(gg: GammaGroup) -> Torsor {
        Torsor::from_cocycle(&Cocycle::trivial(gg))
    }

    pub fn gg(&self) -> &GammaGroup {
        &self.gg
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn right_act(&self, x: usize, g: Elem) -> usize {
        self.right[g][x]
    }

    #[inline]
    pub fn gamma_act(&self, gamma: Elem, x: usize) -> usize {
        self.gamma_action[gamma][x]
    }

    pub fn right_table(&self) -> &[Vec<usize>] {
        &self.right
    }

    pub fn gamma_table(&self) -> &[Vec<usize>] {
        &self.gamma_action
    }

    /// The unique g with basepoint·g = x.
    pub fn transport_from(&self, basepoint: usize, x: usize) -> Elem {
        self.gg
            .group()
            .elements()
            .find(|&g| self.right[g][basepoint] == x)
            .expect("simply transitive")
    }

    /// The cocycle at a basepoint: γ·p₀ = p₀·c(γ). Rebuilding the torsor
    /// from it is an isomorphism sending the identity point to `basepoint`.
    pub fn cocycle_at(&self, basepoint: usize) -> Cocycle {
        let values: Vec<Elem> = self
            .gg
            .gamma()
            .elements()
            .map(|gamma| self.transport_from(basepoint, self.gamma_action[gamma][basepoint]))
            .collect();
        Cocycle::new(self.gg.clone(), values).expect("torsor equivariance implies the cocycle law")
    }

    pub fn as_gamma_set(&self) -> GammaSet {
        GammaSet::new(self.gg.gamma().clone(), self.size, self.gamma_action.clone())
            .expect("validated on construction")
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.as_gamma_set().fixed_points()
    }

    /// Γ-equivariant right-G-isomorphisms self → other, in lexicographic
    /// order. A candidate is determined by the image of point 0.
    pub fn isoms(&self, other: &Torsor) -> Result<Vec<Vec<usize>>, TorsorError> {
        if self.gg != other.gg {
            return Err(TorsorError::GammaGroupMismatch);
        }
        let mut out = Vec::new();
        for y in 0..other.size {
            let mut f = vec![usize::MAX; self.size];
            for g in self.gg.group().elements() {
                f[self.right[g][0]] = other.right[g][y];
            }
            let equivariant = self.gg.gamma().elements().all(|gamma| {
                (0..self.size).all(|x| f[self.gamma_action[gamma][x]] == other.gamma_action[gamma][f[x]])
            });
            if equivariant {
                out.push(f);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn is_isomorphic(&self, other: &Torsor) -> Result<Option<Vec<usize>>, TorsorError> {
        Ok(self.isoms(other)?.into_iter().next())
    }
}

/// A set with commuting simply transitive left H- and right G-actions, both
/// Γ-equivariant.
#[derive(Clone, PartialEq, Eq)]
pub struct Bitorsor {
    left: GammaGroup,
    right: GammaGroup,
    size: usize,
    gamma_action: Vec<Vec<usize>>,
    /// `left_act[h][x]` = h·x
    left_act: Vec<Vec<usize>>,
    /// `right_act[g][x]` = x·g
    right_act: Vec<Vec<usize>>,
}

impl fmt::Debug for Bitorsor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bitorsor({}, {} on the left, {} on the right)",
            self.size,
            self.left.group().name(),
            self.right.group().name()
        )
    }
}

impl Bitorsor {
    pub fn new(
        left: GammaGroup,
        right: GammaGroup,
        size: usize,
        gamma_action: Vec<Vec<usize>>,
        left_act: Vec<Vec<usize>>,
        right_act: Vec<Vec<usize>>,
    ) -> Result<Self, TorsorError> {
        if left.gamma() != right.gamma() {
            return Err(TorsorError::GammaGroupMismatch);
        }
        validate_action_table(left.group(), size, &left_act)?;
        validate_action_table(&right.group().opposite(), size, &right_act)?;
        validate_action_table(left.gamma(), size, &gamma_action)?;
        if size != left.group().order() || size != right.group().order() {
            return Err(TorsorError::NotSimplyTransitive(size, left.group().order()));
        }
        for x in 0..size {
            let mut seen_l = vec![false; size];
            let mut seen_r = vec![false; size];
            for h in left.group().elements() {
                if std::mem::replace(&mut seen_l[left_act[h][x]], true) {
                    return Err(TorsorError::NotSimplyTransitive(size, left.group().order()));
                }
            }
            for g in right.group().elements() {
                if std::mem::replace(&mut seen_r[right_act[g][x]], true) {
                    return Err(TorsorError::NotSimplyTransitive(size, right.group().order()));
                }
            }
        }
        for h in left.group().elements() {
            for g in right.group().elements() {
                for x in 0..size {
                    if left_act[h][right_act[g][x]] != right_act[g][left_act[h][x]] {
                        return Err(TorsorError::ActionsDoNotCommute { h, g, point: x });
                    }
                }
            }
        }
        for gamma in left.gamma().elements() {
            for x in 0..size {
                for h in left.group().elements() {
                    if gamma_action[gamma][left_act[h][x]]
                        != left_act[left.act(gamma, h)][gamma_action[gamma][x]]
                    {
                        return Err(TorsorError::Action(
                            crate::error::ActionError::NotEquivariant { gamma, g: h, point: x },
                        ));
                    }
                }
                for g in right.group().elements() {
                    if gamma_action[gamma][right_act[g][x]]
                        != right_act[right.act(gamma, g)][gamma_action[gamma][x]]
                    {
                        return Err(TorsorError::Action(
                            crate::error::ActionError::NotEquivariant { gamma, g, point: x },
                        ));
                    }
                }
            }
        }
        Ok(Bitorsor { left, right, size, gamma_action, left_act, right_act })
    }

    /// The trivial (G,G)-bitorsor: G with multiplication on both sides and
    /// the structural Γ-action.
    pub fn trivial(gg: GammaGroup) -> Bitorsor {
        let grp = gg.group();
        let n = grp.order();
        let left_act = grp.elements().map(|h| grp.elements().map(|x| grp.mul(h, x)).collect()).collect();
        let right_act = grp.elements().map(|g| grp.elements().map(|x| grp.mul(x, g)).collect()).collect();
        let gamma_action = gg
            .gamma()
            .elements()
            .map(|gamma| grp.elements().map(|x| gg.act(gamma, x)).collect())
            .collect();
        Bitorsor { left: gg.clone(), right: gg, size: n, gamma_action, left_act, right_act }
    }

    /// Upgrade a right torsor to an (H,G)-bitorsor, H the inner form acting
    /// through the basepoint-0 trivialization.
    pub fn from_right_torsor(t: &Torsor) -> Bitorsor {
        let c = t.cocycle_at(0);
        let inner = c.inner_form();
        let grp = t.gg.group();
        // h·x where x = p₀·a: p₀·(h·a)
        let to_base: Vec<Elem> = (0..t.size).map(|x| t.transport_from(0, x)).collect();
        let left_act = grp
            .elements()
            .map(|h| {
                (0..t.size).map(|x| t.right[grp.mul(h, to_base[x])][0]).collect()
            })
            .collect();
        Bitorsor {
            left: inner,
            right: t.gg.clone(),
            size: t.size,
            gamma_action: t.gamma_action.clone(),
            left_act,
            right_act: t.right.clone(),
        }
    }

    pub fn left(&self) -> &GammaGroup {
        &self.left
    }

    pub fn right(&self) -> &GammaGroup {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn left_act(&self, h: Elem, x: usize) -> usize {
        self.left_act[h][x]
    }

    #[inline]
    pub fn right_act(&self, x: usize, g: Elem) -> usize {
        self.right_act[g][x]
    }

    #[inline]
    pub fn gamma_act(&self, gamma: Elem, x: usize) -> usize {
        self.gamma_action[gamma][x]
    }

    /// Forget the left action.
    pub fn right_torsor(&self) -> Torsor {
        Torsor {
            gg: self.right.clone(),
            size: self.size,
            right: self.right_act.clone(),
            gamma_action: self.gamma_action.clone(),
        }
    }

    /// The inverse bitorsor: same points, h⋆y = y·h⁻¹ and y⋆g = g⁻¹·y.
    pub fn inverse(&self) -> Bitorsor {
        let h_grp = self.right.group();
        let g_grp = self.left.group();
        let left_act = h_grp
            .elements()
            .map(|h| (0..self.size).map(|x| self.right_act[h_grp.inv(h)][x]).collect())
            .collect();
        let right_act = g_grp
            .elements()
            .map(|g| (0..self.size).map(|x| self.left_act[g_grp.inv(g)][x]).collect())
            .collect();
        Bitorsor {
            left: self.right.clone(),
            right: self.left.clone(),
            size: self.size,
            gamma_action: self.gamma_action.clone(),
            left_act,
            right_act,
        }
    }

    /// Cocycle of the underlying right torsor at a point.
    pub fn right_cocycle_at(&self, basepoint: usize) -> Cocycle {
        self.right_torsor().cocycle_at(basepoint)
    }

    /// The identification u: H → G at a basepoint of an (H,G)-bitorsor:
    /// h·t = t·u(h). Always a group isomorphism.
    pub fn basepoint_identification(&self, basepoint: usize) -> Vec<Elem> {
        let t = self.right_torsor();
        self.left
            .group()
            .elements()
            .map(|h| t.transport_from(basepoint, self.left_act[h][basepoint]))
            .collect()
    }
}

/// The contracted product P ∧ᴴ Q of an (G,H)-bitorsor with an (H,K)-bitorsor:
/// the quotient of P × Q by (y·h, z) ~ (y, h·z), an (G,K)-bitorsor.
///
/// Points are equivalence classes, represented by their lexicographically
/// smallest pair and ordered by representative.
pub fn contracted_product(p: &Bitorsor, q: &Bitorsor) -> Result<Bitorsor, TorsorError> {
    if p.right != q.left {
        return Err(TorsorError::MiddleGroupMismatch);
    }
    let h_grp = p.right.group();
    let pair_id = |y: usize, z: usize| y * q.size + z;
    // orbit of (y,z) under h: (y·h, h⁻¹·z)
    let mut class_of = vec![usize::MAX; p.size * q.size];
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for y in 0..p.size {
        for z in 0..q.size {
            if class_of[pair_id(y, z)] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push((y, z));
            for h in h_grp.elements() {
                let yy = p.right_act[h][y];
                let zz = q.left_act[h_grp.inv(h)][z];
                class_of[pair_id(yy, zz)] = idx;
            }
        }
    }
    let size = reps.len();
    let gamma = p.left.gamma();
    let gamma_action = gamma
        .elements()
        .map(|gm| {
            reps.iter()
                .map(|&(y, z)| class_of[pair_id(p.gamma_action[gm][y], q.gamma_action[gm][z])])
                .collect()
        })
        .collect();
    let left_act = p
        .left
        .group()
        .elements()
        .map(|g| reps.iter().map(|&(y, z)| class_of[pair_id(p.left_act[g][y], z)]).collect())
        .collect();
    let right_act = q
        .right
        .group()
        .elements()
        .map(|k| reps.iter().map(|&(y, z)| class_of[pair_id(y, q.right_act[k][z])]).collect())
        .collect();
    Bitorsor::new(p.left.clone(), q.right.clone(), size, gamma_action, left_act, right_act)
}

/// The cocycle of P ∧ᴴ Q at the class of a basepoint pair, predicted from
/// the factor cocycles alone: u(c_P(γ)) · c_Q(γ), with u the basepoint
/// identification H → K of Q.
pub fn contracted_cocycle(
    p: &Bitorsor,
    q: &Bitorsor,
    p_base: usize,
    q_base: usize,
) -> Result<Cocycle, TorsorError> {
    if p.right != q.left {
        return Err(TorsorError::MiddleGroupMismatch);
    }
    let cp = p.right_cocycle_at(p_base);
    let cq = q.right_cocycle_at(q_base);
    let u = q.basepoint_identification(q_base);
    let k_grp = q.right.group();
    let values = p
        .left
        .gamma()
        .elements()
        .map(|gamma| k_grp.mul(u[cp.value(gamma)], cq.value(gamma)))
        .collect();
    Cocycle::new(q.right.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{
        conjugation_action, enumerate_cocycles, inversion_action, twisted_conjugate_equiv,
        GammaGroup,
    };
    use crate::group::{cyclic, symmetric3};

    fn z2_s3_trivial() -> GammaGroup {
        GammaGroup::trivial_action(cyclic(2), symmetric3())
    }

    #[test]
    fn trivial_torsor_round_trip() {
        let gg = z2_s3_trivial();
        let t = Torsor::trivial(gg.clone());
        assert_eq!(t.cocycle_at(0), Cocycle::trivial(gg));
        assert_eq!(t.fixed_points().len(), 6); // trivial action fixes everything
    }

    #[test]
    fn cocycle_round_trip_at_identity() {
        for gg in [z2_s3_trivial(), inversion_action(3), conjugation_action(&symmetric3())] {
            for c in enumerate_cocycles(&gg) {
                let t = Torsor::from_cocycle(&c);
                assert_eq!(t.cocycle_at(0), c);
            }
        }
    }

    #[test]
    fn torsor_from_cocycle_validates() {
        let gg = inversion_action(3);
        for c in enumerate_cocycles(&gg) {
            let t = Torsor::from_cocycle(&c);
            Torsor::new(t.gg.clone(), t.size, t.right.clone(), t.gamma_action.clone()).unwrap();
        }
    }

    #[test]
    fn identity_cocycle_gives_free_transitive_gamma_action() {
        // Γ = G = S3 trivial action, c = id: the regular torsor
        let gg = GammaGroup::trivial_action(symmetric3(), symmetric3());
        let c = Cocycle::new(gg, (0..6).collect()).unwrap();
        let t = Torsor::from_cocycle(&c);
        assert!(t.fixed_points().is_empty());
        assert_eq!(t.as_gamma_set().orbits().len(), 1);
    }

    #[test]
    fn inversion_cocycle_torsor_has_one_fixed_point() {
        let gg = inversion_action(3);
        let c = Cocycle::new(gg, vec![0, 1]).unwrap();
        let t = Torsor::from_cocycle(&c);
        // γ: x ↦ 1 − x fixes only x = 2 (since 2·2 = 4 ≡ 1 mod 3)
        assert_eq!(t.fixed_points(), vec![2]);
    }

    #[test]
    fn basepoint_change_twists_the_cocycle() {
        for gg in [z2_s3_trivial(), inversion_action(4), conjugation_action(&symmetric3())] {
            for c in enumerate_cocycles(&gg) {
                let t = Torsor::from_cocycle(&c);
                for x in 0..t.size() {
                    let cx = t.cocycle_at(x);
                    // basepoint x = p₀·x, so the cocycle is the x-twist
                    assert_eq!(cx, c.twisted_conjugate(t.transport_from(0, x)));
                }
            }
        }
    }

    #[test]
    fn fixed_point_iff_cohomologically_trivial() {
        for gg in [z2_s3_trivial(), inversion_action(3), conjugation_action(&symmetric3())] {
            for c in enumerate_cocycles(&gg) {
                let t = Torsor::from_cocycle(&c);
                let trivially =
                    twisted_conjugate_equiv(&c, &Cocycle::trivial(gg.clone())).is_some();
                assert_eq!(!t.fixed_points().is_empty(), trivially);
            }
        }
    }

    #[test]
    fn torsors_isomorphic_iff_cocycles_twisted_conjugate() {
        for gg in [z2_s3_trivial(), inversion_action(4)] {
            let cocycles = enumerate_cocycles(&gg);
            for a in &cocycles {
                for b in &cocycles {
                    let ta = Torsor::from_cocycle(a);
                    let tb = Torsor::from_cocycle(b);
                    let iso = ta.is_isomorphic(&tb).unwrap().is_some();
                    let conj = twisted_conjugate_equiv(a, b).is_some();
                    assert_eq!(iso, conj);
                }
            }
        }
    }

    #[test]
    fn bitorsor_from_right_torsor_validates() {
        for gg in [z2_s3_trivial(), conjugation_action(&symmetric3())] {
            for c in enumerate_cocycles(&gg) {
                let b = Bitorsor::from_right_torsor(&Torsor::from_cocycle(&c));
                Bitorsor::new(
                    b.left.clone(),
                    b.right.clone(),
                    b.size,
                    b.gamma_action.clone(),
                    b.left_act.clone(),
                    b.right_act.clone(),
                )
                .unwrap();
            }
        }
    }

    #[test]
    fn unit_law_of_the_contracted_product() {
        let gg = z2_s3_trivial();
        for c in enumerate_cocycles(&gg) {
            let p = Bitorsor::from_right_torsor(&Torsor::from_cocycle(&c));
            let unit = Bitorsor::trivial(gg.clone());
            let prod = contracted_product(&p, &unit).unwrap();
            // same right G-torsor up to isomorphism
            let iso = prod.right_torsor().is_isomorphic(&p.right_torsor()).unwrap();
            assert!(iso.is_some());
        }
    }

    #[test]
    fn product_with_inverse_is_trivial() {
        for gg in [z2_s3_trivial(), inversion_action(3)] {
            for c in enumerate_cocycles(&gg) {
                let p = Bitorsor::from_right_torsor(&Torsor::from_cocycle(&c));
                let prod = contracted_product(&p, &p.inverse()).unwrap();
                // trivial as a right torsor under the inner form
                assert!(!prod.right_torsor().fixed_points().is_empty());
            }
        }
    }

    #[test]
    fn inverse_is_an_involution() {
        let gg = z2_s3_trivial();
        let c = Cocycle::new(gg, vec![0, 2]).unwrap();
        let p = Bitorsor::from_right_torsor(&Torsor::from_cocycle(&c));
        assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn inverse_of_trivial_is_trivial() {
        let gg = z2_s3_trivial();
        let t = Bitorsor::trivial(gg);
        let ti = t.inverse();
        assert!(!ti.right_torsor().fixed_points().is_empty());
        assert!(ti
            .right_torsor()
            .is_isomorphic(&t.right_torsor())
            .unwrap()
            .is_some());
    }

    #[test]
    fn inverse_cocycle_formula() {
        // the right cocycle of P⁰ at the identity point is γ ↦ c(γ)⁻¹
        for gg in [z2_s3_trivial(), inversion_action(4), conjugation_action(&symmetric3())] {
            for c in enumerate_cocycles(&gg) {
                let p = Bitorsor::from_right_torsor(&Torsor::from_cocycle(&c));
                let p0 = p.inverse();
                assert_eq!(p0.right_cocycle_at(0), c.inverse_cocycle());
            }
        }
    }

    #[test]
    fn contracted_cocycle_matches_quotient_construction() {
        let gg = z2_s3_trivial();
        let cocycles = enumerate_cocycles(&gg);
        for a in &cocycles {
            for b in &cocycles {
                let p = Bitorsor::from_right_torsor(&Torsor::from_cocycle(a));
                // q must be a bitorsor with left group = p's right group = G
                let q = Bitorsor::from_right_torsor(&Torsor::from_cocycle(b));
                // p: (H_a, G), q: (H_b, G): compose p⁰ (G, H_a) with ... use
                // q on the left of p⁰? Middle groups must match: build
                // P ∧ᴳ Q⁰ with P = p (right G) and Q⁰ = q.inverse() (left G).
                let prod = contracted_product(&p, &q.inverse()).unwrap();
                let predicted = contracted_cocycle(&p, &q.inverse(), 0, 0).unwrap();
                let direct = prod.right_cocycle_at(0);
                // the basepoint of the product is the class of (0, 0)
                assert_eq!(direct, predicted);
            }
        }
    }

    #[test]
    fn middle_group_mismatch_is_reported() {
        let gg = z2_s3_trivial();
        let p = Bitorsor::trivial(gg);
        let other = Bitorsor::trivial(inversion_action(3));
        assert!(matches!(
            contracted_product(&p, &other),
            Err(TorsorError::MiddleGroupMismatch | TorsorError::GammaGroupMismatch)
        ));
    }
}
