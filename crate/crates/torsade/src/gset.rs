//! Finite Γ-sets and G-objects.
//!
//! A `GammaSet` is a finite set with a left action of a finite group Γ; it is
//! the desk-scale model of a finite étale algebra over a field whose absolute
//! Galois group surjects onto Γ. A `GObject` additionally carries a left
//! G-action for a Γ-group G, compatible with the Γ-action:
//! γ·(g·x) = (γ⋆g)·(γ·x).

use std::fmt;
use std::sync::Arc;

use crate::error::ActionError;
use crate::gamma::GammaGroup;
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Validate an action table `[group element][point] -> point` as a left
/// action of `g`.
pub(crate) fn validate_action_table(
    g: &FiniteGroup,
    size: usize,
    table: &[Vec<usize>],
) -> Result<(), ActionError> {
    if table.len() != g.order() {
        return Err(ActionError::TableShape { got: table.len(), want: g.order() });
    }
    for (row, perm) in table.iter().enumerate() {
        if perm.len() != size {
            return Err(ActionError::TableShape { got: perm.len(), want: size });
        }
        let mut seen = vec![false; size];
        for &p in perm {
            if p >= size || std::mem::replace(&mut seen[p], true) {
                return Err(ActionError::RowNotPermutation(row));
            }
        }
    }
    for (x, &p) in table[0].iter().enumerate() {
        if p != x {
            return Err(ActionError::IdentityMoves(x));
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            for x in 0..size {
                if table[ab][x] != table[a][table[b][x]] {
                    return Err(ActionError::NotAnAction { gamma: a, delta: b, point: x });
                }
            }
        }
    }
    Ok(())
}

/// A finite set with a validated left Γ-action.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaSet {
    gamma: Arc<FiniteGroup>,
    size: usize,
    action: Vec<Vec<usize>>,
}

impl fmt::Debug for GammaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaSet({} points under {})", self.size, self.gamma.name())
    }
}

impl GammaSet {
    pub fn new(
        gamma: Arc<FiniteGroup>,
        size: usize,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, ActionError> {
        validate_action_table(&gamma, size, &action)?;
        Ok(GammaSet { gamma, size, action })
    }

    /// The set with the trivial action.
    pub fn trivial(gamma: Arc<FiniteGroup>, size: usize) -> Self {
        let action = vec![(0..size).collect(); gamma.order()];
        GammaSet { gamma, size, action }
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, gamma: Elem, x: usize) -> usize {
        self.action[gamma][x]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// Orbit partition; each orbit sorted, orbits ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_under(self.size, self.gamma.order(), |g, x| self.action[g][x])
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| self.gamma.elements().all(|g| self.action[g][x] == x))
            .collect()
    }

    /// Same points, action restricted to a subgroup of Γ (renumbered as a
    /// group in its own right).
    pub fn restrict(&self, sub: &Subgroup) -> Result<GammaSet, ActionError> {
        if sub.parent().as_ref() != self.gamma.as_ref() {
            return Err(ActionError::NotASubgroup);
        }
        let (gamma2, incl) = sub.to_group(&format!("{}|", self.gamma.name()));
        let action = gamma2
            .elements()
            .map(|g| self.action[incl.apply(g)].clone())
            .collect();
        Ok(GammaSet { gamma: gamma2, size: self.size, action })
    }

    /// True iff the designated subgroup acts transitively. The subgroup
    /// plays the absolute Galois group of the scalar extension; in cover
    /// contexts it is the image of the geometric fundamental group.
    pub fn is_geometrically_connected(&self, geometric: &Subgroup) -> bool {
        if self.size == 0 {
            return false;
        }
        let mut reach = vec![false; self.size];
        let mut stack = vec![0usize];
        reach[0] = true;
        while let Some(x) = stack.pop() {
            for &g in geometric.members() {
                let y = self.action[g][x];
                if !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        reach.into_iter().all(|b| b)
    }

    /// Stabilizer of a point, as a subgroup of Γ.
    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members: Vec<Elem> =
            self.gamma.elements().filter(|&g| self.action[g][x] == x).collect();
        self.gamma.subgroup(&members).expect("stabilizers are subgroups")
    }

    pub fn disjoint_union(&self, other: &GammaSet) -> GammaSet {
        debug_assert_eq!(self.gamma, other.gamma);
        let size = self.size + other.size;
        let action = self
            .gamma
            .elements()
            .map(|g| {
                let mut row: Vec<usize> = self.action[g].clone();
                row.extend(other.action[g].iter().map(|&p| p + self.size));
                row
            })
            .collect();
        GammaSet { gamma: self.gamma.clone(), size, action }
    }

    /// Product with the diagonal action; point (x, y) is numbered
    /// x·|other| + y.
    pub fn product(&self, other: &GammaSet) -> GammaSet {
        debug_assert_eq!(self.gamma, other.gamma);
        let size = self.size * other.size;
        let action = self
            .gamma
            .elements()
            .map(|g| {
                (0..size)
                    .map(|p| {
                        let (x, y) = (p / other.size, p % other.size);
                        self.action[g][x] * other.size + other.action[g][y]
                    })
                    .collect()
            })
            .collect();
        GammaSet { gamma: self.gamma.clone(), size, action }
    }
}

fn orbits_under(size: usize, nops: usize, act: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; size];
    let mut out = Vec::new();
    for start in 0..size {
        if assigned[start] {
            continue;
        }
        let mut orbit = vec![start];
        assigned[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in 0..nops {
                let y = act(g, x);
                if !assigned[y] {
                    assigned[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// A Γ-set with a Γ-equivariant left G-action.
#[derive(Clone, PartialEq, Eq)]
pub struct GObject {
    base: GammaSet,
    gg: GammaGroup,
    gaction: Vec<Vec<usize>>,
}

impl fmt::Debug for GObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GObject({} points, G = {}, Gamma = {})",
            self.base.size(),
            self.gg.group().name(),
            self.gg.gamma().name()
        )
    }
}

impl GObject {
    pub fn new(base: GammaSet, gg: GammaGroup, gaction: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        if base.gamma().as_ref() != gg.gamma().as_ref() {
            return Err(ActionError::GroupMismatch);
        }
        validate_action_table(gg.group(), base.size(), &gaction)?;
        // γ·(g·x) = (γ⋆g)·(γ·x)
        for gamma in gg.gamma().elements() {
            for g in gg.group().elements() {
                for x in 0..base.size() {
                    let lhs = base.act(gamma, gaction[g][x]);
                    let rhs = gaction[gg.act(gamma, g)][base.act(gamma, x)];
                    if lhs != rhs {
                        return Err(ActionError::NotEquivariant { gamma, g, point: x });
                    }
                }
            }
        }
        Ok(GObject { base, gg, gaction })
    }

    pub fn base(&self) -> &GammaSet {
        &self.base
    }

    pub fn gg(&self) -> &GammaGroup {
        &self.gg
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    #[inline]
    pub fn gact(&self, g: Elem, x: usize) -> usize {
        self.gaction[g][x]
    }

    pub fn gaction_table(&self) -> &[Vec<usize>] {
        &self.gaction
    }

    /// Restrict the Γ-structure (both on points and on G) to a subgroup.
    pub fn restrict(&self, sub: &Subgroup) -> Result<GObject, ActionError> {
        let base = self.base.restrict(sub)?;
        let gg = self.gg.restrict(sub)?;
        Ok(GObject { base, gg, gaction: self.gaction.clone() })
    }

    /// G-equivariant bijections self → other ignoring Γ entirely.
    pub fn plain_g_isoms(&self, other: &GObject) -> Vec<Vec<usize>> {
        equivariant_bijections(
            self.size(),
            other.size(),
            &collect_generator_pairs(&[(&self.gaction, &other.gaction)], self.gg.group()),
        )
    }

    pub fn disjoint_union(&self, other: &GObject) -> GObject {
        debug_assert_eq!(self.gg, other.gg);
        let base = self.base.disjoint_union(&other.base);
        let gaction = self
            .gg
            .group()
            .elements()
            .map(|g| {
                let mut row: Vec<usize> = self.gaction[g].clone();
                row.extend(other.gaction[g].iter().map(|&p| p + self.size()));
                row
            })
            .collect();
        GObject { base, gg: self.gg.clone(), gaction }
    }

    pub fn product(&self, other: &GObject) -> GObject {
        debug_assert_eq!(self.gg, other.gg);
        let base = self.base.product(&other.base);
        let m = other.size();
        let gaction = self
            .gg
            .group()
            .elements()
            .map(|g| {
                (0..base.size())
                    .map(|p| self.gaction[g][p / m] * m + other.gaction[g][p % m])
                    .collect()
            })
            .collect();
        GObject { base, gg: self.gg.clone(), gaction }
    }

    /// Orbit space by a subgroup K of G acting through the G-action, as a
    /// Γ-set, along with the projection point → orbit index. Orbits are
    /// numbered by smallest member.
    pub fn orbit_space(&self, k: &Subgroup) -> (GammaSet, Vec<usize>) {
        debug_assert_eq!(k.parent().as_ref(), self.gg.group().as_ref());
        let orbits = orbits_under(self.size(), k.order(), |i, x| {
            self.gaction[k.members()[i]][x]
        });
        let mut proj = vec![0usize; self.size()];
        for (idx, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                proj[x] = idx;
            }
        }
        let action: Vec<Vec<usize>> = self
            .gg
            .gamma()
            .elements()
            .map(|gamma| orbits.iter().map(|o| proj[self.base.act(gamma, o[0])]).collect())
            .collect();
        let base = GammaSet {
            gamma: self.gg.gamma().clone(),
            size: orbits.len(),
            action,
        };
        (base, proj)
    }
}

/// All bijections `0..size -> 0..size2` commuting with every listed pair of
/// permutations, in lexicographic order.
///
/// Backtracking over orbit representatives: choosing the image of one point
/// forces the images of its whole orbit under the generators, so the search
/// never branches inside an orbit.
pub(crate) fn equivariant_bijections(
    size: usize,
    size2: usize,
    generators: &[(Vec<usize>, Vec<usize>)],
) -> Vec<Vec<usize>> {
    if size != size2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut map: Vec<Option<usize>> = vec![None; size];
    let mut used = vec![false; size];
    backtrack_equivariant(size, generators, &mut map, &mut used, &mut out);
    out.sort_unstable();
    out
}

fn backtrack_equivariant(
    size: usize,
    generators: &[(Vec<usize>, Vec<usize>)],
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(next) = map.iter().position(|v| v.is_none()) else {
        out.push(map.iter().map(|v| v.unwrap()).collect());
        return;
    };
    'candidate: for image in 0..size {
        if used[image] {
            continue;
        }
        // propagate: f(g·x) = g·f(x) for every generator pair
        let mut added: Vec<usize> = Vec::new();
        map[next] = Some(image);
        used[image] = true;
        added.push(next);
        let mut head = 0;
        while head < added.len() {
            let x = added[head];
            let fx = map[x].unwrap();
            head += 1;
            for (src, dst) in generators {
                let y = src[x];
                let fy = dst[fx];
                match map[y] {
                    None => {
                        if used[fy] {
                            for &a in &added {
                                used[map[a].unwrap()] = false;
                                map[a] = None;
                            }
                            continue 'candidate;
                        }
                        map[y] = Some(fy);
                        used[fy] = true;
                        added.push(y);
                    }
                    Some(v) if v != fy => {
                        for &a in &added {
                            used[map[a].unwrap()] = false;
                            map[a] = None;
                        }
                        continue 'candidate;
                    }
                    Some(_) => {}
                }
            }
        }
        backtrack_equivariant(size, generators, map, used, out);
        for &a in &added {
            used[map[a].unwrap()] = false;
            map[a] = None;
        }
    }
}

/// Action-table pairs for a generating set of the acting group.
fn collect_generator_pairs(
    tables: &[(&Vec<Vec<usize>>, &Vec<Vec<usize>>)],
    group: &FiniteGroup,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let gens = {
        let g = group.generating_set();
        if g.is_empty() { vec![0] } else { g }
    };
    let mut out = Vec::new();
    for (src, dst) in tables {
        for &g in &gens {
            out.push((src[g].clone(), dst[g].clone()));
        }
    }
    out
}

/// All bijections commuting with both the Γ-action and the G-action,
/// in lexicographic order.
pub fn equivariant_isoms(a: &GObject, b: &GObject) -> Result<Vec<Vec<usize>>, ActionError> {
    if a.gg != b.gg {
        return Err(ActionError::GroupMismatch);
    }
    let gamma_pairs = collect_generator_pairs(
        &[(&a.base.action, &b.base.action)],
        a.gg.gamma(),
    );
    let g_pairs = collect_generator_pairs(&[(&a.gaction, &b.gaction)], a.gg.group());
    let mut generators = gamma_pairs;
    generators.extend(g_pairs);
    Ok(equivariant_bijections(a.size(), b.size(), &generators))
}

/// Γ-equivariant bijections between plain Γ-sets.
pub fn gamma_set_isoms(a: &GammaSet, b: &GammaSet) -> Vec<Vec<usize>> {
    debug_assert_eq!(a.gamma, b.gamma);
    let pairs = collect_generator_pairs(&[(&a.action, &b.action)], &a.gamma);
    equivariant_bijections(a.size, b.size, &pairs)
}
