//! Γ-groups, cocycles and nonabelian H¹.
//!
//! A `GammaGroup` is a finite group G together with an action of Γ by
//! automorphisms, written γ⋆g. A `Cocycle` is a map c: Γ → G with
//!
//! ```text
//! c(identity) = identity,     c(γδ) = c(γ)·(γ⋆c(δ)),
//! ```
//!
//! the right-torsor convention used throughout the crate. Two cocycles are
//! twisted-conjugate when c₂(γ) = g⁻¹·c₁(γ)·(γ⋆g) for a single g; the classes
//! form the pointed set H¹(Γ, G).

use std::fmt;
use std::sync::Arc;

use crate::error::{ActionError, TorsorError};
use crate::group::{Elem, FiniteGroup, GroupHom, Subgroup};

/// A finite group with a Γ-action by automorphisms.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaGroup {
    gamma: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
    /// `act[γ][g]` = γ⋆g; each row is an automorphism of `group`.
    act: Vec<Vec<Elem>>,
}

impl fmt::Debug for GammaGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaGroup({} acting on {})", self.gamma.name(), self.group.name())
    }
}

impl GammaGroup {
    pub fn new(
        gamma: Arc<FiniteGroup>,
        group: Arc<FiniteGroup>,
        act: Vec<Vec<Elem>>,
    ) -> Result<Self, ActionError> {
        if act.len() != gamma.order() {
            return Err(ActionError::TableShape { got: act.len(), want: gamma.order() });
        }
        for (row, perm) in act.iter().enumerate() {
            if perm.len() != group.order() {
                return Err(ActionError::TableShape { got: perm.len(), want: group.order() });
            }
            let mut seen = vec![false; group.order()];
            for &v in perm {
                if v >= group.order() || std::mem::replace(&mut seen[v], true) {
                    return Err(ActionError::RowNotPermutation(row));
                }
            }
            for a in group.elements() {
                for b in group.elements() {
                    if perm[group.mul(a, b)] != group.mul(perm[a], perm[b]) {
                        return Err(ActionError::NotAutomorphism { row, a, b });
                    }
                }
            }
        }
        for (x, &v) in act[0].iter().enumerate() {
            if v != x {
                return Err(ActionError::IdentityMoves(x));
            }
        }
        for a in gamma.elements() {
            for b in gamma.elements() {
                let ab = gamma.mul(a, b);
                for g in group.elements() {
                    if act[ab][g] != act[a][act[b][g]] {
                        return Err(ActionError::NotAnAction { gamma: a, delta: b, point: g });
                    }
                }
            }
        }
        Ok(GammaGroup { gamma, group, act })
    }

    pub fn trivial_action(gamma: Arc<FiniteGroup>, group: Arc<FiniteGroup>) -> Self {
        let act = vec![group.elements().collect(); gamma.order()];
        GammaGroup { gamma, group, act }
    }

    /// Γ acting on itself-as-coefficients through a homomorphism into the
    /// automorphism permutations listed in `autos`.
    pub fn from_automorphism_map(
        gamma: Arc<FiniteGroup>,
        group: Arc<FiniteGroup>,
        to_auto: impl Fn(Elem) -> Vec<Elem>,
    ) -> Result<Self, ActionError> {
        let act = gamma.elements().map(to_auto).collect();
        GammaGroup::new(gamma, group, act)
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn act(&self, gamma: Elem, g: Elem) -> Elem {
        self.act[gamma][g]
    }

    pub fn action_table(&self) -> &[Vec<Elem>] {
        &self.act
    }

    pub fn is_trivial_action(&self) -> bool {
        self.act.iter().all(|row| row.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// Restrict the acting group to a subgroup of Γ.
    pub fn restrict(&self, sub: &Subgroup) -> Result<GammaGroup, ActionError> {
        if sub.parent().as_ref() != self.gamma.as_ref() {
            return Err(ActionError::NotASubgroup);
        }
        let (gamma2, incl) = sub.to_group(&format!("{}|", self.gamma.name()));
        let act = gamma2.elements().map(|g| self.act[incl.apply(g)].clone()).collect();
        Ok(GammaGroup { gamma: gamma2, group: self.group.clone(), act })
    }
}

/// A validated cocycle c: Γ → G.
#[derive(Clone, PartialEq, Eq)]
pub struct Cocycle {
    gg: GammaGroup,
    values: Vec<Elem>,
}

impl fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cocycle{:?}", self.values)
    }
}

impl Cocycle {
    /// Validate the cocycle condition; the error carries a witness pair.
    pub fn new(gg: GammaGroup, values: Vec<Elem>) -> Result<Self, TorsorError> {
        if values.len() != gg.gamma.order() {
            return Err(TorsorError::CocycleLength {
                got: values.len(),
                want: gg.gamma.order(),
            });
        }
        if values[0] != 0 {
            return Err(TorsorError::CocycleIdentity);
        }
        for gamma in gg.gamma.elements() {
            for delta in gg.gamma.elements() {
                let lhs = values[gg.gamma.mul(gamma, delta)];
                let rhs = gg.group.mul(values[gamma], gg.act(gamma, values[delta]));
                if lhs != rhs {
                    return Err(TorsorError::CocycleCondition(gamma, delta));
                }
            }
        }
        Ok(Cocycle { gg, values })
    }

    pub fn trivial(gg: GammaGroup) -> Self {
        let values = vec![0; gg.gamma.order()];
        Cocycle { gg, values }
    }

    /// A homomorphism Γ → G is a cocycle for the trivial action.
    pub fn from_hom(gg: GammaGroup, hom: &GroupHom) -> Result<Self, TorsorError> {
        debug_assert!(gg.is_trivial_action());
        Cocycle::new(gg, hom.map().to_vec())
    }

    pub fn gg(&self) -> &GammaGroup {
        &self.gg
    }

    #[inline]
    pub fn value(&self, gamma: Elem) -> Elem {
        self.values[gamma]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// c'(γ) = g⁻¹ · c(γ) · (γ⋆g); the cocycle seen from the basepoint
    /// moved by g.
    pub fn twisted_conjugate(&self, g: Elem) -> Cocycle {
        let grp = &self.gg.group;
        let ginv = grp.inv(g);
        let values = self
            .gg
            .gamma
            .elements()
            .map(|gamma| grp.mul(grp.mul(ginv, self.values[gamma]), self.gg.act(gamma, g)))
            .collect();
        Cocycle { gg: self.gg.clone(), values }
    }

    /// The inner form: same group, Γ now acting by γ⋆'g = c(γ)·(γ⋆g)·c(γ)⁻¹.
    pub fn inner_form(&self) -> GammaGroup {
        let grp = &self.gg.group;
        let act = self
            .gg
            .gamma
            .elements()
            .map(|gamma| {
                let c = self.values[gamma];
                grp.elements()
                    .map(|g| grp.mul(grp.mul(c, self.gg.act(gamma, g)), grp.inv(c)))
                    .collect()
            })
            .collect();
        GammaGroup { gamma: self.gg.gamma.clone(), group: grp.clone(), act }
    }

    /// γ ↦ c(γ)⁻¹, a cocycle for the inner form; the cocycle of the inverse
    /// torsor.
    pub fn inverse_cocycle(&self) -> Cocycle {
        let gg = self.inner_form();
        let grp = &self.gg.group;
        let values = self.values.iter().map(|&v| grp.inv(v)).collect();
        Cocycle { gg, values }
    }

    /// Pointwise product: `second` must be a cocycle for the inner form of
    /// `self`. Returns the cocycle γ ↦ second(γ)·self(γ) over the original
    /// Γ-group; this is the cocycle of the contracted product of the two
    /// torsors.
    pub fn compose_with(&self, second: &Cocycle) -> Result<Cocycle, TorsorError> {
        if second.gg != self.inner_form() {
            return Err(TorsorError::GammaGroupMismatch);
        }
        let grp = &self.gg.group;
        let values = self
            .gg
            .gamma
            .elements()
            .map(|gamma| grp.mul(second.values[gamma], self.values[gamma]))
            .collect();
        Cocycle::new(self.gg.clone(), values)
    }

    /// Push forward along a Γ-equivariant homomorphism u: G → G₁ into the
    /// target Γ-group.
    pub fn pushforward(&self, target: &GammaGroup, u: &GroupHom) -> Result<Cocycle, TorsorError> {
        if u.source().as_ref() != self.gg.group.as_ref()
            || u.target().as_ref() != target.group.as_ref()
            || target.gamma.as_ref() != self.gg.gamma.as_ref()
        {
            return Err(TorsorError::GammaGroupMismatch);
        }
        for gamma in self.gg.gamma.elements() {
            for g in self.gg.group.elements() {
                if u.apply(self.gg.act(gamma, g)) != target.act(gamma, u.apply(g)) {
                    return Err(TorsorError::Action(ActionError::NotEquivariant {
                        gamma,
                        g,
                        point: 0,
                    }));
                }
            }
        }
        let values = self.values.iter().map(|&v| u.apply(v)).collect();
        Cocycle::new(target.clone(), values)
    }

    /// Restrict both the cocycle and its Γ-group to a subgroup of Γ.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Cocycle, TorsorError> {
        let gg = self.gg.restrict(sub)?;
        let values = sub.members().iter().map(|&g| self.values[g]).collect();
        Ok(Cocycle { gg, values })
    }
}

/// Some g with c₂(γ) = g⁻¹·c₁(γ)·(γ⋆g) for all γ, or None. The smallest
/// witness is returned.
pub fn twisted_conjugate_equiv(c1: &Cocycle, c2: &Cocycle) -> Option<Elem> {
    if c1.gg != c2.gg {
        return None;
    }
    let grp = &c1.gg.group;
    grp.elements().find(|&g| {
        let ginv = grp.inv(g);
        c1.gg
            .gamma
            .elements()
            .all(|gamma| {
                c2.values[gamma]
                    == grp.mul(grp.mul(ginv, c1.values[gamma]), c1.gg.act(gamma, g))
            })
    })
}

/// All cocycles over the Γ-group, in lexicographic order of the value table.
///
/// A cocycle is determined by its values on a generating set of Γ; the
/// search assigns those values and closes under the cocycle identity,
/// pruning contradictions. The result is identical to filtering all
/// |G|^(|Γ|−1) candidate tables, which stays feasible only for the smallest
/// inputs and is kept as a test oracle.
pub fn enumerate_cocycles(gg: &GammaGroup) -> Vec<Cocycle> {
    let gens = {
        let g = gg.gamma.generating_set();
        if g.is_empty() { Vec::new() } else { g }
    };
    let mut partial: Vec<Option<Elem>> = vec![None; gg.gamma.order()];
    partial[0] = Some(0);
    let mut tables = Vec::new();
    cocycle_assign(gg, &gens, 0, &mut partial, &mut tables);
    tables.sort_unstable();
    tables
        .into_iter()
        .map(|values| Cocycle { gg: gg.clone(), values })
        .collect()
}

fn cocycle_assign(
    gg: &GammaGroup,
    gens: &[Elem],
    next: usize,
    partial: &mut Vec<Option<Elem>>,
    out: &mut Vec<Vec<Elem>>,
) {
    if next == gens.len() {
        if let Ok(values) = partial.iter().map(|v| v.ok_or(())).collect::<Result<Vec<_>, _>>() {
            out.push(values);
        }
        return;
    }
    for image in gg.group.elements() {
        let saved = partial.clone();
        partial[gens[next]] = Some(image);
        if cocycle_close(gg, partial) {
            cocycle_assign(gg, gens, next + 1, partial, out);
        }
        *partial = saved;
    }
}

/// Propagate c(γδ) = c(γ)·(γ⋆c(δ)); false on contradiction.
fn cocycle_close(gg: &GammaGroup, partial: &mut [Option<Elem>]) -> bool {
    loop {
        let mut changed = false;
        for gamma in gg.gamma.elements() {
            let Some(cg) = partial[gamma] else { continue };
            for delta in gg.gamma.elements() {
                let Some(cd) = partial[delta] else { continue };
                let prod = gg.gamma.mul(gamma, delta);
                let forced = gg.group.mul(cg, gg.act(gamma, cd));
                match partial[prod] {
                    None => {
                        partial[prod] = Some(forced);
                        changed = true;
                    }
                    Some(v) if v != forced => return false,
                    Some(_) => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// A twisted-conjugacy class of cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub representative: Cocycle,
    pub members: Vec<Cocycle>,
    pub is_trivial_class: bool,
}

impl CohomologyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The pointed set H¹(Γ, G): all cocycles partitioned by twisted conjugacy.
/// The distinguished class comes first; the remaining classes are ordered by
/// (size, representative table). Representatives are lexicographically
/// minimal in their class.
pub fn h1(gg: &GammaGroup) -> Vec<CohomologyClass> {
    let all = enumerate_cocycles(gg);
    let mut used = vec![false; all.len()];
    let index_of = |values: &[Elem], all: &[Cocycle]| -> usize {
        all.binary_search_by(|c| c.values.as_slice().cmp(values)).expect("closed under twisting")
    };
    let mut classes: Vec<CohomologyClass> = Vec::new();
    for start in 0..all.len() {
        if used[start] {
            continue;
        }
        let mut member_idx: Vec<usize> = gg
            .group
            .elements()
            .map(|g| index_of(all[start].twisted_conjugate(g).values(), &all))
            .collect();
        member_idx.sort_unstable();
        member_idx.dedup();
        for &i in &member_idx {
            used[i] = true;
        }
        let members: Vec<Cocycle> = member_idx.iter().map(|&i| all[i].clone()).collect();
        let is_trivial_class = members.iter().any(|c| c.is_trivial());
        classes.push(CohomologyClass {
            representative: members[0].clone(),
            members,
            is_trivial_class,
        });
    }
    classes.sort_by(|a, b| {
        b.is_trivial_class
            .cmp(&a.is_trivial_class)
            .then(a.size().cmp(&b.size()))
            .then(a.representative.values.cmp(&b.representative.values))
    });
    classes
}

/// Γ = Z/2 acting on Z/n by negation.
pub fn inversion_action(n: usize) -> GammaGroup {
    let zn = crate::group::cyclic(n);
    let z2 = crate::group::cyclic(2);
    let act = vec![
        zn.elements().collect(),
        zn.elements().map(|x| (n - x) % n).collect(),
    ];
    GammaGroup::new(z2, zn, act).unwrap()
}

/// G acting on itself by conjugation.
pub fn conjugation_action(g: &Arc<FiniteGroup>) -> GammaGroup {
    let act = g.elements().map(|a| g.elements().map(|x| g.conj(a, x)).collect()).collect();
    GammaGroup { gamma: g.clone(), group: g.clone(), act }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, enumerate_homs, symmetric3, HomConstraints};

    fn z2_s3_trivial() -> GammaGroup {
        GammaGroup::trivial_action(cyclic(2), symmetric3())
    }

    #[test]
    fn inversion_is_a_valid_gamma_group() {
        let gg = inversion_action(3);
        assert_eq!(gg.act(1, 1), 2);
        assert!(!gg.is_trivial_action());
    }

    #[test]
    fn non_automorphism_rows_are_rejected() {
        let z3 = cyclic(3);
        let z2 = cyclic(2);
        // the transposition 0↔1 is not an automorphism of Z3
        let err = GammaGroup::new(z2, z3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap_err();
        assert!(matches!(err, ActionError::RowNotPermutation(_) | ActionError::NotAutomorphism { .. }));
    }

    #[test]
    fn trivial_cocycle_is_valid() {
        let gg = z2_s3_trivial();
        let c = Cocycle::new(gg, vec![0, 0]).unwrap();
        assert!(c.is_trivial());
    }

    #[test]
    fn trivial_action_cocycles_are_homs() {
        let gg = z2_s3_trivial();
        let cocycles = enumerate_cocycles(&gg);
        let homs = enumerate_homs(&cyclic(2), &symmetric3(), &HomConstraints::new());
        assert_eq!(cocycles.len(), homs.len());
        for (c, h) in cocycles.iter().zip(&homs) {
            assert_eq!(c.values(), h.map());
        }
    }

    #[test]
    fn inversion_action_all_three_tables_are_cocycles() {
        let gg = inversion_action(3);
        // c(1) + 1⋆c(1) = c(1) − c(1) = 0: every choice of c(1) works
        for x in 0..3 {
            assert!(Cocycle::new(gg.clone(), vec![0, x]).is_ok());
        }
        assert_eq!(enumerate_cocycles(&gg).len(), 3);
    }

    #[test]
    fn cocycle_condition_witness() {
        let gg = GammaGroup::trivial_action(cyclic(2), cyclic(4));
        // c(1) = 1 is not an involution in Z4
        let err = Cocycle::new(gg, vec![0, 1]).unwrap_err();
        assert_eq!(err, TorsorError::CocycleCondition(1, 1));
    }

    #[test]
    fn enumerate_matches_naive_filter() {
        fn naive(gg: &GammaGroup) -> Vec<Vec<Elem>> {
            let n = gg.gamma().order();
            let m = gg.group().order();
            let mut out = Vec::new();
            let total = m.pow((n - 1) as u32);
            for code in 0..total {
                let mut values = vec![0; n];
                let mut c = code;
                for slot in 1..n {
                    values[slot] = c % m;
                    c /= m;
                }
                if Cocycle::new(gg.clone(), values.clone()).is_ok() {
                    out.push(values);
                }
            }
            out.sort_unstable();
            out
        }
        for gg in [
            z2_s3_trivial(),
            inversion_action(3),
            inversion_action(4),
            GammaGroup::trivial_action(symmetric3(), cyclic(2)),
            conjugation_action(&symmetric3()),
        ] {
            let fast: Vec<Vec<Elem>> =
                enumerate_cocycles(&gg).into_iter().map(|c| c.values).collect();
            assert_eq!(fast, naive(&gg));
        }
    }

    #[test]
    fn twisted_conjugacy_is_reflexive_with_identity_witness() {
        let gg = z2_s3_trivial();
        let c = Cocycle::new(gg, vec![0, 1]).unwrap();
        assert_eq!(twisted_conjugate_equiv(&c, &c), Some(0));
    }

    #[test]
    fn transposition_cocycles_are_pairwise_equivalent() {
        let gg = z2_s3_trivial();
        let cs: Vec<Cocycle> =
            (1..=3).map(|t| Cocycle::new(gg.clone(), vec![0, t]).unwrap()).collect();
        for a in &cs {
            for b in &cs {
                assert!(twisted_conjugate_equiv(a, b).is_some());
            }
        }
        let trivial = Cocycle::trivial(gg);
        assert_eq!(twisted_conjugate_equiv(&cs[0], &trivial), None);
    }

    #[test]
    fn h1_z2_s3_trivial_has_two_classes() {
        let classes = h1(&z2_s3_trivial());
        assert_eq!(classes.len(), 2);
        assert!(classes[0].is_trivial_class);
        assert_eq!(classes[0].size(), 1);
        assert_eq!(classes[1].size(), 3);
        let total: usize = classes.iter().map(|c| c.size()).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn h1_s3_s3_trivial_has_three_classes() {
        let gg = GammaGroup::trivial_action(symmetric3(), symmetric3());
        let classes = h1(&gg);
        assert_eq!(classes.len(), 3);
        let sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
    }

    #[test]
    fn h1_inversion_z3_is_a_point() {
        let classes = h1(&inversion_action(3));
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].size(), 3);
    }

    #[test]
    fn inner_form_of_trivial_cocycle_is_unchanged() {
        let gg = conjugation_action(&symmetric3());
        let c = Cocycle::trivial(gg.clone());
        assert_eq!(c.inner_form(), gg);
    }

    #[test]
    fn inner_form_of_identity_cocycle_is_conjugation() {
        // Γ = G = S3, trivial action, c = id
        let gg = GammaGroup::trivial_action(symmetric3(), symmetric3());
        let c = Cocycle::new(gg, (0..6).collect()).unwrap();
        let inner = c.inner_form();
        assert_eq!(inner, conjugation_action(&symmetric3()));
    }

    #[test]
    fn inner_form_over_abelian_group_is_unchanged() {
        let gg = inversion_action(4);
        for c in enumerate_cocycles(&gg) {
            assert_eq!(c.inner_form(), gg);
        }
    }

    #[test]
    fn inverse_cocycle_composes_to_trivial() {
        let gg = z2_s3_trivial();
        for c in enumerate_cocycles(&gg) {
            let inv = c.inverse_cocycle();
            let prod = c.compose_with(&inv).unwrap();
            assert!(prod.is_trivial());
        }
    }

    #[test]
    fn pushforward_along_sign_map() {
        let s3 = symmetric3();
        let z2 = cyclic(2);
        let sgn = GroupHom::new(s3.clone(), z2.clone(), vec![0, 1, 1, 1, 0, 0]).unwrap();
        let gg = z2_s3_trivial();
        let target = GammaGroup::trivial_action(cyclic(2), z2);
        let c = Cocycle::new(gg, vec![0, 1]).unwrap();
        let pushed = c.pushforward(&target, &sgn).unwrap();
        assert_eq!(pushed.values(), &[0, 1]);
    }
}
