//! Finite groups given by explicit Cayley tables.
//!
//! Elements are dense identifiers `0..order` with `0` the identity; every
//! higher layer refers to elements only through these identifiers. All
//! validation is exhaustive: a `FiniteGroup` that exists has been checked to
//! be associative, to have a two-sided identity and two-sided inverses.

use std::fmt;
use std::sync::Arc;

use crate::error::GroupError;

/// Dense element identifier. `0` is always the identity.
pub type Elem = usize;

/// Default cap on group orders. Everything downstream is exhaustive, so the
/// cap is a guarantee that a computation finishes at desk scale.
pub const DEFAULT_MAX_ORDER: usize = 512;

/// A finite group as a validated Cayley table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    cayley: Vec<Elem>,
    inverse: Vec<Elem>,
    names: Option<Vec<String>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        // Labels are cosmetic; equality is structural.
        self.order == other.order && self.cayley == other.cayley
    }
}
impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validate a Cayley table and build the group.
    pub fn from_cayley(name: &str, table: &[Vec<Elem>]) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::BadIdentity(0));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::MapLength { got: row.len(), want: order });
            }
            let mut seen = vec![false; order];
            for &v in row {
                if v >= order || seen[v] {
                    return Err(GroupError::RowNotPermutation(i));
                }
                seen[v] = true;
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for row in table {
                let v = row[j];
                if seen[v] {
                    return Err(GroupError::ColumnNotPermutation(j));
                }
                seen[v] = true;
            }
        }
        for i in 0..order {
            if table[0][i] != i || table[i][0] != i {
                return Err(GroupError::BadIdentity(i));
            }
        }
        for x in 0..order {
            for y in 0..order {
                let xy = table[x][y];
                for z in 0..order {
                    if table[xy][z] != table[x][table[y][z]] {
                        return Err(GroupError::NonAssociative(x, y, z));
                    }
                }
            }
        }
        let mut inverse = vec![0; order];
        for x in 0..order {
            let mut found = None;
            for y in 0..order {
                if table[x][y] == 0 && table[y][x] == 0 {
                    found = Some(y);
                    break;
                }
            }
            inverse[x] = found.ok_or(GroupError::NoInverse(x))?;
        }
        let mut cayley = Vec::with_capacity(order * order);
        for row in table {
            cayley.extend_from_slice(row);
        }
        Ok(FiniteGroup { name: name.to_string(), order, cayley, inverse, names: None })
    }

    /// Attach display labels, one per element.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// g x g⁻¹
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn element_name(&self, a: Elem) -> String {
        match &self.names {
            Some(ns) => ns[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The opposite group: same elements, product reversed. Right actions of
    /// a group are exactly left actions of its opposite, which lets every
    /// action table in the crate be validated by a single code path.
    pub fn opposite(&self) -> FiniteGroup {
        let order = self.order;
        let mut cayley = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                cayley[a * order + b] = self.mul(b, a);
            }
        }
        FiniteGroup {
            name: format!("{}^op", self.name),
            order,
            cayley,
            inverse: self.inverse.clone(),
            names: self.names.clone(),
        }
    }

    /// Conjugacy classes, each sorted, ordered by smallest member. The
    /// smallest member is the class representative.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if assigned[x] {
                continue;
            }
            let mut class: Vec<Elem> = self.elements().map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn centralizer(&self, g: Elem) -> Subgroup {
        let members: Vec<Elem> =
            self.elements().filter(|&x| self.mul(x, g) == self.mul(g, x)).collect();
        Subgroup { parent: self.clone().into(), members }
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<Elem> = self
            .elements()
            .filter(|&x| self.elements().all(|g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        Subgroup { parent: self.clone().into(), members }
    }

    /// Subgroup from an explicit member list; checks identity, closure and
    /// inverses.
    pub fn subgroup(&self, members: &[Elem]) -> Result<Subgroup, GroupError> {
        let mut members: Vec<Elem> = members.to_vec();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m >= self.order {
                return Err(GroupError::ElementRange(m, self.order));
            }
        }
        if members.first() != Some(&0) {
            return Err(GroupError::NoIdentityInSubgroup);
        }
        let inside = |x: Elem| members.binary_search(&x).is_ok();
        for &a in &members {
            for &b in &members {
                let p = self.mul(a, b);
                if !inside(p) {
                    return Err(GroupError::NotClosed(a, b, p));
                }
            }
        }
        Ok(Subgroup { parent: self.clone().into(), members })
    }

    /// Smallest subgroup containing the generators.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        let mut members: Vec<Elem> = queue;
        members.sort_unstable();
        Subgroup { parent: self.clone().into(), members }
    }

    /// Quotient by a normal subgroup. Elements of the quotient are cosets
    /// ordered by their smallest member; returns the canonical surjection.
    pub fn quotient(&self, k: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
        k.require_normal()?;
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<Elem> = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &m in &k.members {
                coset_of[self.mul(x, m)] = idx;
            }
        }
        let n = reps.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = coset_of[self.mul(reps[a], reps[b])];
            }
        }
        let name = format!("{}/{}", self.name, k.order());
        let quot = Arc::new(FiniteGroup::from_cayley(&name, &table)?);
        let hom = GroupHom {
            source: Arc::new(self.clone()),
            target: quot.clone(),
            map: coset_of,
        };
        Ok((quot, hom))
    }

    /// A small generating sequence found greedily in element order.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.generated_subgroup(&[]);
        for x in self.elements() {
            if span.order() == self.order {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// All automorphisms, as element permutations in lexicographic order.
    pub fn automorphisms(self: &Arc<Self>) -> Vec<Vec<Elem>> {
        enumerate_homs(self, self, &HomConstraints::new().injective().surjective())
            .into_iter()
            .map(|h| h.map)
            .collect()
    }
}

/// A subgroup as a sorted member list of its parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?} of {}", self.members, self.parent.name())
    }
}

impl Subgroup {
    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_whole_group(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Err carries a conjugation witness (g, k) with g k g⁻¹ outside.
    pub fn require_normal(&self) -> Result<(), GroupError> {
        let g_ref = &self.parent;
        for g in g_ref.elements() {
            for &k in &self.members {
                if !self.contains(g_ref.conj(g, k)) {
                    return Err(GroupError::NotNormal { g, k });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        self.require_normal().is_ok()
    }

    /// The subgroup as a group in its own right (members renumbered in
    /// sorted order, so the identity stays at 0) plus the inclusion map.
    pub fn to_group(&self, name: &str) -> (Arc<FiniteGroup>, GroupHom) {
        let n = self.order();
        let index_of = |x: Elem| self.members.binary_search(&x).expect("closed subgroup");
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = index_of(self.parent.mul(self.members[a], self.members[b]));
            }
        }
        let grp =
            Arc::new(FiniteGroup::from_cayley(name, &table).expect("subgroup closure validated"));
        let inclusion =
            GroupHom { source: grp.clone(), target: self.parent.clone(), map: self.members.clone() };
        (grp, inclusion)
    }
}

/// A homomorphism between finite groups, stored as a full image table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}, {:?})", self.source.name(), self.target.name(), self.map)
    }
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::MapLength { got: map.len(), want: source.order() });
        }
        for &v in &map {
            if v >= target.order() {
                return Err(GroupError::ElementRange(v, target.order()));
            }
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(GroupError::NotAHom(x, y));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// self ∘ other
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        debug_assert_eq!(other.target.order(), self.source.order());
        GroupHom {
            source: other.source.clone(),
            target: self.target.clone(),
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn require_surjective(&self) -> Result<(), GroupError> {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            seen[v] = true;
        }
        match seen.iter().position(|&b| !b) {
            Some(miss) => Err(GroupError::NotSurjective(miss)),
            None => Ok(()),
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<Elem> = self.source.elements().filter(|&x| self.map[x] == 0).collect();
        Subgroup { parent: self.source.clone(), members }
    }

    pub fn image(&self) -> Subgroup {
        let mut members: Vec<Elem> = self.map.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup { parent: self.target.clone(), members }
    }
}

/// Constraints for homomorphism enumeration.
#[derive(Clone, Default)]
pub struct HomConstraints<'a> {
    pub injective: bool,
    pub surjective: bool,
    /// Require `outer ∘ f = required`.
    pub composed_with: Option<(&'a GroupHom, &'a GroupHom)>,
}

impl<'a> HomConstraints<'a> {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }
    pub fn surjective(mut self) -> Self {
        self.surjective = true;
        self
    }
    pub fn composed_with(mut self, outer: &'a GroupHom, required: &'a GroupHom) -> Self {
        self.composed_with = Some((outer, required));
        self
    }
}

/// Every homomorphism source → target satisfying the constraints, in
/// lexicographic order of the image table.
///
/// Backtracks over images of a generating sequence; partial maps are closed
/// under products after each choice, so contradictions prune early.
pub fn enumerate_homs(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    constraints: &HomConstraints,
) -> Vec<GroupHom> {
    let gens = source.generating_set();
    let mut results = Vec::new();
    let mut partial: Vec<Option<Elem>> = vec![None; source.order()];
    partial[0] = Some(0);
    if check_constraints_partial(source, target, &partial, constraints) {
        assign(source, target, &gens, 0, &mut partial, constraints, &mut results);
    }
    results.sort_by(|a, b| a.map.cmp(&b.map));
    results
}

fn check_constraints_partial(
    _source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    partial: &[Option<Elem>],
    constraints: &HomConstraints,
) -> bool {
    if let Some((outer, required)) = constraints.composed_with {
        for (x, v) in partial.iter().enumerate() {
            if let Some(v) = v {
                if outer.apply(*v) != required.apply(x) {
                    return false;
                }
            }
        }
    }
    if constraints.injective {
        let mut seen = vec![false; target.order()];
        for v in partial.iter().flatten() {
            if std::mem::replace(&mut seen[*v], true) {
                return false;
            }
        }
    }
    true
}

fn assign(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    gens: &[Elem],
    next: usize,
    partial: &mut Vec<Option<Elem>>,
    constraints: &HomConstraints,
    results: &mut Vec<GroupHom>,
) {
    if next == gens.len() {
        let map: Vec<Elem> = match partial.iter().map(|v| v.ok_or(())).collect() {
            Ok(m) => m,
            Err(()) => return, // generating sequence did not close; impossible
        };
        let hom = GroupHom { source: source.clone(), target: target.clone(), map };
        if constraints.surjective && !hom.is_surjective() {
            return;
        }
        results.push(hom);
        return;
    }
    for image in target.elements() {
        let saved = partial.clone();
        partial[gens[next]] = Some(image);
        if close_partial(source, target, partial)
            && check_constraints_partial(source, target, partial, constraints)
        {
            assign(source, target, gens, next + 1, partial, constraints, results);
        }
        *partial = saved;
    }
}

/// Propagate map(x·y) = map(x)·map(y) to a fixpoint; false on contradiction.
fn close_partial(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    partial: &mut [Option<Elem>],
) -> bool {
    loop {
        let mut changed = false;
        for x in source.elements() {
            let Some(fx) = partial[x] else { continue };
            for y in source.elements() {
                let Some(fy) = partial[y] else { continue };
                let xy = source.mul(x, y);
                let fxy = target.mul(fx, fy);
                match partial[xy] {
                    None => {
                        partial[xy] = Some(fxy);
                        changed = true;
                    }
                    Some(v) if v != fxy => return false,
                    Some(_) => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

// ---------------------------------------------------------------------------
// Built-in groups used by the verification corpus and by tests.
// ---------------------------------------------------------------------------

/// Z/n with addition; identity 0.
pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    let table: Vec<Vec<Elem>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let names = (0..n).map(|i| i.to_string()).collect();
    Arc::new(FiniteGroup::from_cayley(&format!("Z{n}"), &table).unwrap().with_names(names))
}

pub fn trivial_group() -> Arc<FiniteGroup> {
    cyclic(1)
}

/// Z/2 × Z/2, elements numbered (0,0),(0,1),(1,0),(1,1).
pub fn klein4() -> Arc<FiniteGroup> {
    let table: Vec<Vec<Elem>> =
        (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    Arc::new(FiniteGroup::from_cayley("V4", &table).unwrap())
}

fn perm_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    // apply b first, then a
    b.iter().map(|&i| a[i]).collect()
}

fn group_from_perms(name: &str, perms: &[Vec<usize>], names: Vec<String>) -> Arc<FiniteGroup> {
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let n = perms.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = index_of(&perm_mul(&perms[a], &perms[b]));
        }
    }
    Arc::new(FiniteGroup::from_cayley(name, &table).unwrap().with_names(names))
}

/// S₃ with the fixed element order e, (12), (13), (23), (123), (132).
pub fn symmetric3() -> Arc<FiniteGroup> {
    let perms: Vec<Vec<usize>> = vec![
        vec![0, 1, 2], // e
        vec![1, 0, 2], // (12)
        vec![2, 1, 0], // (13)
        vec![0, 2, 1], // (23)
        vec![1, 2, 0], // (123): 0->1,1->2,2->0
        vec![2, 0, 1], // (132)
    ];
    let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    group_from_perms("S3", &perms, names)
}

/// Dihedral group of order 2n acting on an n-gon; elements ordered
/// e, r, …, rⁿ⁻¹, s, rs, …, rⁿ⁻¹s.
pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
    let rot = |k: usize| -> Vec<usize> { (0..n).map(|i| (i + k) % n).collect() };
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let mut perms = Vec::with_capacity(2 * n);
    let mut names = Vec::with_capacity(2 * n);
    for k in 0..n {
        perms.push(rot(k));
        names.push(if k == 0 { "e".to_string() } else { format!("r{k}") });
    }
    for k in 0..n {
        perms.push(perm_mul(&rot(k), &refl));
        names.push(if k == 0 { "s".to_string() } else { format!("r{k}s") });
    }
    group_from_perms(&format!("D{n}"), &perms, names)
}

/// The quaternion group, elements 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion8() -> Arc<FiniteGroup> {
    // encode x as (sign, axis), axis 0 = 1, 1 = i, 2 = j, 3 = k
    let dec = |x: usize| (x % 2 == 1, x / 2); // (negative, axis)
    let enc = |neg: bool, axis: usize| axis * 2 + neg as usize;
    let mul = |x: usize, y: usize| -> usize {
        let (nx, ax) = dec(x);
        let (ny, ay) = dec(y);
        // axis multiplication table with sign
        let (axis, extra_neg) = match (ax, ay) {
            (0, a) => (a, false),
            (a, 0) => (a, false),
            (a, b) if a == b => (0, true), // i*i = -1
            (1, 2) => (3, false),          // ij = k
            (2, 3) => (1, false),          // jk = i
            (3, 1) => (2, false),          // ki = j
            (2, 1) => (3, true),           // ji = -k
            (3, 2) => (1, true),           // kj = -i
            (1, 3) => (2, true),           // ik = -j
            _ => unreachable!(),
        };
        enc(nx ^ ny ^ extra_neg, axis)
    };
    let table: Vec<Vec<Elem>> = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
    let names =
        ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    Arc::new(FiniteGroup::from_cayley("Q8", &table).unwrap().with_names(names))
}

/// Sₙ for small n, elements in BFS order over the generators (0 1) and
/// (0 1 … n−1), identity first.
pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
    assert!(n >= 1 && n <= 5, "desk-scale symmetric groups only");
    if n <= 2 {
        return cyclic(n.max(1));
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    gens.push(swap);
    gens.push((0..n).map(|i| (i + 1) % n).collect());
    let id: Vec<usize> = (0..n).collect();
    let mut perms = vec![id.clone()];
    let mut head = 0;
    while head < perms.len() {
        let cur = perms[head].clone();
        head += 1;
        for g in &gens {
            let next = perm_mul(&cur, g);
            if !perms.contains(&next) {
                perms.push(next);
            }
        }
    }
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    group_from_perms(&format!("S{n}"), &perms, names)
}

/// Index of a permutation (as an image vector on 0..n) in `symmetric(n)`.
pub fn symmetric_index(sn: &FiniteGroup, perm: &[usize]) -> Option<Elem> {
    let want = cycle_notation(perm);
    sn.elements().find(|&e| sn.element_name(e) == want)
}

/// Cycle notation with 1-based points, e.g. `(1 2)(3 4)`; `e` for identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = perm[start];
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = perm[next];
        }
        out.push('(');
        out.push_str(
            &cycle.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Direct product A × B, elements numbered a·|B| + b.
pub fn direct_product(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
) -> (Arc<FiniteGroup>, GroupHom, GroupHom) {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            table[x][y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
        }
    }
    let prod = Arc::new(
        FiniteGroup::from_cayley(&format!("{}x{}", a.name(), b.name()), &table).unwrap(),
    );
    let proj_a =
        GroupHom { source: prod.clone(), target: a.clone(), map: (0..n).map(|x| x / nb).collect() };
    let proj_b =
        GroupHom { source: prod.clone(), target: b.clone(), map: (0..n).map(|x| x % nb).collect() };
    (prod, proj_a, proj_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_from_table() {
        let g = FiniteGroup::from_cayley("Z2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn bad_row_reports_index() {
        let err = FiniteGroup::from_cayley("bad", &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::RowNotPermutation(1));
        assert_eq!(err.to_string(), "row not a permutation, row 1");
    }

    #[test]
    fn latin_square_without_associativity_is_rejected() {
        // smallest nonassociative quasigroup with identity has order 5
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_cayley("loop", &table).unwrap_err();
        assert!(matches!(err, GroupError::NonAssociative(..)), "{err:?}");
    }

    #[test]
    fn s3_classes_have_sizes_1_3_2() {
        let g = symmetric3();
        let classes = g.conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        // representative is the smallest member
        assert_eq!(classes[0][0], 0);
        assert_eq!(classes[1][0], 1);
        assert_eq!(classes[2][0], 4);
    }

    #[test]
    fn q8_classes_have_sizes_1_1_2_2_2() {
        let g = quaternion8();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn abelian_group_classes_are_singletons() {
        let g = cyclic(4);
        assert_eq!(g.conjugacy_classes().len(), 4);
    }

    #[test]
    fn class_sizes_multiply_with_centralizers() {
        for g in [symmetric3(), dihedral(4), quaternion8(), symmetric(4)] {
            for class in g.conjugacy_classes() {
                let rep = class[0];
                assert_eq!(class.len() * g.centralizer(rep).order(), g.order());
            }
            let total: usize = g.conjugacy_classes().iter().map(|c| c.len()).sum();
            assert_eq!(total, g.order());
        }
    }

    #[test]
    fn centralizers_in_s3() {
        let g = symmetric3();
        assert_eq!(g.centralizer(0).order(), 6);
        assert_eq!(g.centralizer(1).order(), 2); // a transposition
        assert_eq!(g.centralizer(4).order(), 3); // a 3-cycle
        assert!(g.centralizer(1).contains(1));
    }

    #[test]
    fn centralizer_contains_the_element_span_and_the_center() {
        for g in [symmetric3(), dihedral(4), quaternion8()] {
            let center = g.center();
            for x in g.elements() {
                let cent = g.centralizer(x);
                for m in g.generated_subgroup(&[x]).members() {
                    assert!(cent.contains(*m));
                }
                for z in center.members() {
                    assert!(cent.contains(*z));
                }
            }
        }
    }

    #[test]
    fn centers() {
        assert_eq!(symmetric3().center().order(), 1);
        assert_eq!(dihedral(4).center().order(), 2);
        assert_eq!(quaternion8().center().order(), 2);
        assert!(cyclic(6).center().is_whole_group());
    }

    #[test]
    fn quotient_by_trivial_is_identity() {
        let g = symmetric3();
        let k = g.subgroup(&[0]).unwrap();
        let (q, theta) = g.quotient(&k).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(theta.map(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn s3_mod_a3_has_order_2() {
        let g = symmetric3();
        let a3 = g.subgroup(&[0, 4, 5]).unwrap();
        let (q, theta) = g.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(theta.is_surjective());
        assert_eq!(theta.kernel().members(), &[0, 4, 5]);
    }

    #[test]
    fn s3_mod_transposition_subgroup_is_not_normal() {
        let g = symmetric3();
        let h = g.subgroup(&[0, 1]).unwrap();
        let err = g.quotient(&h).unwrap_err();
        match err {
            GroupError::NotNormal { g: w, k } => {
                assert!(k == 1 && !h.contains(symmetric3().conj(w, k)));
            }
            other => panic!("expected NotNormal, got {other:?}"),
        }
    }

    #[test]
    fn hom_counts_match_hand_enumeration() {
        // 4 homs Z2 -> S3: trivial plus the three transpositions
        let homs = enumerate_homs(&cyclic(2), &symmetric3(), &HomConstraints::new());
        assert_eq!(homs.len(), 4);
        let images: Vec<Elem> = homs.iter().map(|h| h.apply(1)).collect();
        assert_eq!(images, vec![0, 1, 2, 3]);

        // the 6 automorphisms of S3
        let autos = enumerate_homs(
            &symmetric3(),
            &symmetric3(),
            &HomConstraints::new().injective().surjective(),
        );
        assert_eq!(autos.len(), 6);

        // only the trivial hom Z3 -> Z2
        let homs = enumerate_homs(&cyclic(3), &cyclic(2), &HomConstraints::new());
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn hom_count_between_cyclic_groups_is_gcd() {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        for n in 1..=8 {
            for m in 1..=8 {
                let homs = enumerate_homs(&cyclic(n), &cyclic(m), &HomConstraints::new());
                // solutions of n·x = 0 in Z/m
                assert_eq!(homs.len(), gcd(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn composed_with_constraint_picks_sections() {
        let s3 = symmetric3();
        let z2 = cyclic(2);
        // sign map in the fixed numbering: transpositions are odd
        let sgn = GroupHom::new(s3.clone(), z2.clone(), vec![0, 1, 1, 1, 0, 0]).unwrap();
        let id = GroupHom::identity(&z2);
        let sections = enumerate_homs(
            &z2,
            &s3,
            &HomConstraints::new().composed_with(&sgn, &id),
        );
        assert_eq!(sections.len(), 3);
        for s in &sections {
            assert_eq!(sgn.apply(s.apply(1)), 1);
        }
    }

    #[test]
    fn opposite_group_reverses_products() {
        let g = symmetric3();
        let op = g.opposite();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(op.mul(a, b), g.mul(b, a));
            }
        }
    }

    #[test]
    fn symmetric4_has_order_24() {
        let s4 = symmetric(4);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.conjugacy_classes().len(), 5);
    }

    #[test]
    fn generated_subgroup_of_s3() {
        let g = symmetric3();
        assert_eq!(g.generated_subgroup(&[4]).members(), &[0, 4, 5]);
        assert_eq!(g.generated_subgroup(&[1, 4]).order(), 6);
    }
}
