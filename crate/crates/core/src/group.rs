//! Finite groups given by multiplication tables, plus the coset and
//! right-G-set machinery the algebra modules are built on.
//!
//! Every choice of representative is "smallest element index", so all
//! derived data (classes, transversals, orbits) is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

/// Default cap on group order; all downstream tables are quadratic in it.
pub const DEFAULT_MAX_ORDER: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {0} exceeds the limit {1}")]
    TooLarge(usize, usize),
    #[error("empty group")]
    Empty,
    #[error("multiplication table has wrong shape")]
    Shape,
    #[error("table entry {0} out of range")]
    OutOfRange(usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid permutation generator: {0}")]
    BadPermutation(String),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("G-set action table has wrong shape")]
    GSetShape,
    #[error("G-set action: s·1 != s at s = {0}")]
    GSetIdentity(usize),
    #[error("G-set action not compatible at (s={0}, g={1}, h={2})")]
    GSetCompatibility(usize, usize, usize),
}

/// A finite group as a complete multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTransversal {
    pub subgroup: Vec<usize>,
    pub reps: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table `mul[a * n + b] = a b`,
    /// checking closure, identity, inverses and associativity exhaustively.
    pub fn from_table(order: usize, mul: Vec<usize>) -> Result<Self, GroupError> {
        Self::from_table_with_limit(order, mul, DEFAULT_MAX_ORDER)
    }

    pub fn from_table_with_limit(
        order: usize,
        mul: Vec<usize>,
        max_order: usize,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > max_order {
            return Err(GroupError::TooLarge(order, max_order));
        }
        if mul.len() != order * order {
            return Err(GroupError::Shape);
        }
        if let Some(&bad) = mul.iter().find(|&&v| v >= order) {
            return Err(GroupError::OutOfRange(bad));
        }
        let m = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inv = vec![0; order];
        for (g, slot) in inv.iter_mut().enumerate() {
            *slot = (0..order)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or(GroupError::NoInverse(g))?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            mul,
            identity,
            inv,
        })
    }

    /// Closure of permutation generators (images of `0..degree`), with
    /// elements indexed in lexicographic order of their image lists.
    /// The product `gh` is the composite "apply h, then g".
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_permutations_with_limit(generators, DEFAULT_MAX_ORDER)
    }

    pub fn from_permutations_with_limit(
        generators: &[Vec<usize>],
        max_order: usize,
    ) -> Result<Self, GroupError> {
        let degree = generators.iter().map(Vec::len).max().unwrap_or(0);
        let pad = |p: &Vec<usize>| -> Result<Vec<usize>, GroupError> {
            let mut q: Vec<usize> = p.clone();
            q.extend(p.len()..degree);
            let mut seen = vec![false; degree];
            for &v in &q {
                if v >= degree || seen[v] {
                    return Err(GroupError::BadPermutation(format!("{p:?}")));
                }
                seen[v] = true;
            }
            Ok(q)
        };
        let gens: Vec<Vec<usize>> = generators.iter().map(pad).collect::<Result<_, _>>()?;
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    if seen.len() > max_order {
                        return Err(GroupError::TooLarge(seen.len(), max_order));
                    }
                    queue.push_back(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elems.len();
        let mut mul = vec![0; n * n];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                mul[a * n + b] = index[&compose(pa, pb)];
            }
        }
        Self::from_table_with_limit(n, mul, max_order)
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            identity: 0,
            inv: vec![0],
        }
    }

    /// `Z/n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_table_with_limit(n, mul, usize::MAX).expect("cyclic table is a group")
    }

    /// Direct product with `(a, b)` at index `a + |A| * b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x % na, x / na);
                let (ya, yb) = (y % na, y / na);
                mul[x * n + y] = a.mul(xa, ya) + na * b.mul(xb, yb);
            }
        }
        Self::from_table_with_limit(n, mul, usize::MAX).expect("product of groups is a group")
    }

    /// `Z2 x Z2` with `(a1, a2)` at index `a1 + 2 a2`.
    pub fn klein_four() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(&[swap, cycle]).expect("symmetric group")
    }

    /// Dihedral group of order `2n` acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&[rot, refl]).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `x g x^-1`
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv[x])
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if assigned[g] {
                continue;
            }
            let members: BTreeSet<usize> = self.elements().map(|x| self.conjugate(x, g)).collect();
            for &m in &members {
                assigned[m] = true;
            }
            classes.push(ConjugacyClass {
                representative: g,
                members: members.into_iter().collect(),
            });
        }
        classes
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        self.elements()
            .filter(|&x| self.mul(x, g) == self.mul(g, x))
            .collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        if h.is_empty() || h.iter().any(|&x| x >= self.order) {
            return false;
        }
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity)
            && h.iter().all(|&a| set.contains(&self.inv(a)))
            && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    fn greedy_cosets(
        &self,
        h: &[usize],
        coset: impl Fn(usize, usize) -> usize,
    ) -> Result<CosetTransversal, GroupError> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotSubgroup);
        }
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        let order = std::iter::once(self.identity).chain(self.elements().filter(|&g| g != self.identity));
        for g in order {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in h {
                covered[coset(g, x)] = true;
            }
        }
        let mut subgroup = h.to_vec();
        subgroup.sort_unstable();
        Ok(CosetTransversal { subgroup, reps })
    }

    /// Representatives `t` of the left cosets `tH`; identity first, the
    /// rest chosen greedily by smallest index.
    pub fn left_transversal(&self, h: &[usize]) -> Result<CosetTransversal, GroupError> {
        self.greedy_cosets(h, |g, x| self.mul(g, x))
    }

    /// Representatives `g` of the right cosets `Hg`; identity first.
    pub fn right_transversal(&self, h: &[usize]) -> Result<CosetTransversal, GroupError> {
        self.greedy_cosets(h, |g, x| self.mul(x, g))
    }

    /// The subgroup on `elements` (sorted), re-indexed as `0..len` in that
    /// order. Returns the subgroup and the embedding into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(elements) {
            return Err(GroupError::NotSubgroup);
        }
        let mut emb = elements.to_vec();
        emb.sort_unstable();
        emb.dedup();
        let pos: HashMap<usize, usize> = emb.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = emb.len();
        let mut mul = vec![0; n * n];
        for (i, &a) in emb.iter().enumerate() {
            for (j, &b) in emb.iter().enumerate() {
                mul[i * n + j] = pos[&self.mul(a, b)];
            }
        }
        let sub = Self::from_table_with_limit(n, mul, usize::MAX)?;
        Ok((sub, emb))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&g| seen[g]).collect()
    }

    /// A generating set chosen greedily by smallest index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for g in self.elements() {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A finite right G-set; `action[s * |G| + g] = s·g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightGSet {
    size: usize,
    group_order: usize,
    action: Vec<usize>,
}

/// Orbit of a point with its stabilizer and a right transversal
/// `g_1 = 1, ..., g_k` such that `orbit[i] = s·g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub point: usize,
    pub orbit: Vec<usize>,
    pub stabilizer: Vec<usize>,
    pub transversal: CosetTransversal,
}

impl OrbitData {
    /// Position `i` in the transversal with `s·g_i = t`.
    pub fn coset_of(&self, t: usize) -> Option<usize> {
        self.orbit.iter().position(|&x| x == t)
    }
}

impl RightGSet {
    pub fn new(group: &FiniteGroup, size: usize, action: Vec<usize>) -> Result<Self, GroupError> {
        let n = group.order();
        if size == 0 || action.len() != size * n || action.iter().any(|&t| t >= size) {
            return Err(GroupError::GSetShape);
        }
        let set = RightGSet {
            size,
            group_order: n,
            action,
        };
        for s in 0..size {
            if set.act(s, group.identity()) != s {
                return Err(GroupError::GSetIdentity(s));
            }
            for g in group.elements() {
                for h in group.elements() {
                    if set.act(set.act(s, g), h) != set.act(s, group.mul(g, h)) {
                        return Err(GroupError::GSetCompatibility(s, g, h));
                    }
                }
            }
        }
        Ok(set)
    }

    /// `size` points, every group element acting as the identity.
    pub fn trivial(group: &FiniteGroup, size: usize) -> Self {
        let action = (0..size).flat_map(|s| std::iter::repeat_n(s, group.order())).collect();
        RightGSet {
            size,
            group_order: group.order(),
            action,
        }
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.order();
        let action = (0..n * n).map(|i| group.mul(i / n, i % n)).collect();
        RightGSet {
            size: n,
            group_order: n,
            action,
        }
    }

    /// Right cosets `H\G`, point `i` being the coset of `reps[i]`.
    pub fn cosets(group: &FiniteGroup, subgroup: &[usize]) -> Result<Self, GroupError> {
        let tr = group.right_transversal(subgroup)?;
        let which = |x: usize| -> usize {
            tr.reps
                .iter()
                .position(|&r| subgroup.iter().any(|&h| group.mul(h, r) == x))
                .expect("cosets partition the group")
        };
        let n = group.order();
        let mut action = Vec::with_capacity(tr.reps.len() * n);
        for &r in &tr.reps {
            for g in group.elements() {
                action.push(which(group.mul(r, g)));
            }
        }
        RightGSet::new(group, tr.reps.len(), action)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    #[inline]
    pub fn act(&self, s: usize, g: usize) -> usize {
        self.action[s * self.group_order + g]
    }

    pub fn table(&self) -> &[usize] {
        &self.action
    }

    pub fn orbit_stabilizer(&self, group: &FiniteGroup, s: usize) -> OrbitData {
        let stabilizer: Vec<usize> = group.elements().filter(|&g| self.act(s, g) == s).collect();
        let transversal = group
            .right_transversal(&stabilizer)
            .expect("stabilizer is a subgroup");
        let orbit = transversal.reps.iter().map(|&g| self.act(s, g)).collect();
        OrbitData {
            point: s,
            orbit,
            stabilizer,
            transversal,
        }
    }

    /// Orbit decomposition with representatives the smallest point of each orbit.
    pub fn orbits(&self, group: &FiniteGroup) -> Vec<OrbitData> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for s in 0..self.size {
            if seen[s] {
                continue;
            }
            let data = self.orbit_stabilizer(group, s);
            for &t in &data.orbit {
                seen[t] = true;
            }
            out.push(data);
        }
        out
    }
}
