//! Coordinate permutations, generator-presented groups and symmetry detection.
//!
//! Permutations act on the right: `i^(gh) = (i^g)^h`, and on points by
//! `(x^g)_{i^g} = x_i`, so that `(x^g)^h = x^(gh)`. Indices are 0-based in the
//! Rust API; the textual cycle notation (parsing and `Display`) is 1-based.
//!
//! A permutation `g` is a symmetry of `max cᵗx, Ax ≤ b, x ≥ 0` when `c^g = c` and
//! permuting the columns of `(A|b)` by `g` yields the same multiset of augmented
//! rows. The row permutation `σ` realizing that is returned as part of a
//! [`SymmetryWitness`].

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::instance::{IpInstance, Point};
use crate::layers::{neighbor_set, NeighborSet};
use crate::rational::Rational;

pub const DEFAULT_DETECTION_CAP: usize = 10;
pub const DEFAULT_ELEMENT_CAP: usize = 4_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 1-based cycles, e.g. `&[&[1, 2, 3]]` for `(1 2 3)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} outside 1..={n}"
                    )));
                }
                if used[p - 1] {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated")));
                }
                used[p - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        if cycles.iter().any(|c| c.iter().any(|&p| p == 0 || p > n)) {
            return Err(Error::InvalidPermutation(format!("point outside 1..={n}")));
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)`; `()` is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidPermutation(format!("`{}`: {msg}", text.trim()));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        while !rest.is_empty() {
            let inner_start = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = inner_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &inner_start[..close];
            let cycle = body
                .split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("non-numeric point")))
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner_start[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `i^g`, 0-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// The product `self·other`: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn apply_to_point(&self, x: &Point) -> Result<Point> {
        if x.dim() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                got: x.dim(),
            });
        }
        let mut out = x.0.clone();
        for (i, v) in x.0.iter().enumerate() {
            out[self.images[i]] = v.clone();
        }
        Ok(Point(out))
    }

    fn apply_to_tuple(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&i| self.images[i]).collect()
    }

    fn apply_to_set(&self, s: &[usize]) -> Vec<usize> {
        let mut out = self.apply_to_tuple(s);
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One permutation per line in cycle notation; blank lines and `#` comments are skipped.
pub fn parse_generators(text: &str, n: usize) -> Result<Vec<Permutation>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| Permutation::parse_cycles(l, n))
        .collect()
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Option<Vec<Permutation>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch {
                expected: degree,
                got: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
        })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup {
            degree: n,
            generators: Vec::new(),
            elements: None,
        }
    }

    /// `S_n = ⟨(1 2), (1 2 … n)⟩`.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[1, 2]]).unwrap());
        }
        if n >= 3 {
            let long: Vec<usize> = (1..=n).collect();
            gens.push(Permutation::from_cycles(n, &[&long]).unwrap());
        }
        PermGroup {
            degree: n,
            generators: gens,
            elements: None,
        }
    }

    /// `A_n = ⟨(1 2 3), (1 2 … n)⟩` for odd n and `⟨(1 2 3), (2 3 … n)⟩` for even n.
    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[&[1, 2, 3]]).unwrap());
        }
        if n >= 4 {
            let start = if n % 2 == 1 { 1 } else { 2 };
            let long: Vec<usize> = (start..=n).collect();
            gens.push(Permutation::from_cycles(n, &[&long]).unwrap());
        }
        PermGroup {
            degree: n,
            generators: gens,
            elements: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements, from the cache or by closure under the generators.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        if let Some(e) = &self.elements {
            return Ok(e.clone());
        }
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "group",
                            size: seen.len() as u128,
                            cap: cap as u128,
                        });
                    }
                    order.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        order.sort();
        Ok(order)
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(self.elements(cap)?.len())
    }

    pub fn cached_elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub g: Permutation,
    /// Row `i` of `A` with its columns permuted by `g` (and its `b` entry) equals row `sigma[i]`.
    pub sigma: Vec<usize>,
}

impl SymmetryWitness {
    pub fn verify(&self, inst: &IpInstance) -> bool {
        let g = &self.g;
        let n = inst.n();
        if g.degree() != n || self.sigma.len() != inst.m() {
            return false;
        }
        if Permutation::new(self.sigma.clone()).is_err() {
            return false;
        }
        let c_ok = (0..n).all(|j| inst.c()[g.image(j)] == inst.c()[j]);
        let rows_ok = (0..inst.m()).all(|i| {
            let target = self.sigma[i];
            inst.b()[target] == inst.b()[i]
                && (0..n).all(|j| inst.a()[target][j] == inst.a()[i][g.image(j)])
        });
        c_ok && rows_ok
    }
}

/// Returns a witness if `g` is a symmetry of `inst`, `None` otherwise.
pub fn is_symmetry(inst: &IpInstance, g: &Permutation) -> Option<SymmetryWitness> {
    let n = inst.n();
    if g.degree() != n {
        return None;
    }
    if (0..n).any(|j| inst.c()[g.image(j)] != inst.c()[j]) {
        return None;
    }
    let key = |row: &[Rational], bi: &Rational| {
        let mut k: Vec<Rational> = row.to_vec();
        k.push(bi.clone());
        k
    };
    let mut slots: HashMap<Vec<Rational>, VecDeque<usize>> = HashMap::new();
    for (i, (row, bi)) in inst.a().iter().zip(inst.b()).enumerate() {
        slots.entry(key(row, bi)).or_default().push_back(i);
    }
    let mut sigma = Vec::with_capacity(inst.m());
    for (row, bi) in inst.a().iter().zip(inst.b()) {
        let permuted: Vec<Rational> = (0..n).map(|j| row[g.image(j)].clone()).collect();
        let target = slots.get_mut(&key(&permuted, bi))?.pop_front()?;
        sigma.push(target);
    }
    Some(SymmetryWitness {
        g: g.clone(),
        sigma,
    })
}

/// Instance entries replaced by dense ids so that backtracking compares small integers.
struct InternedInstance {
    rows: Vec<Vec<u32>>,
    rhs: Vec<u32>,
    c: Vec<u32>,
}

impl InternedInstance {
    fn new(inst: &IpInstance) -> Self {
        let mut values: Vec<&Rational> = inst
            .a()
            .iter()
            .flatten()
            .chain(inst.b())
            .chain(inst.c())
            .collect();
        values.sort();
        values.dedup();
        let id = |v: &Rational| values.binary_search(&v).unwrap() as u32;
        InternedInstance {
            rows: inst
                .a()
                .iter()
                .map(|r| r.iter().map(id).collect())
                .collect(),
            rhs: inst.b().iter().map(id).collect(),
            c: inst.c().iter().map(id).collect(),
        }
    }

    fn column_signature(&self, j: usize) -> (u32, Vec<u32>) {
        let mut col: Vec<u32> = self.rows.iter().map(|r| r[j]).collect();
        col.sort_unstable();
        (self.c[j], col)
    }

    /// Multiset of augmented rows restricted to the first `t` columns read through `images`.
    fn prefix_multiset(&self, images: &[usize]) -> Vec<Vec<u32>> {
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .zip(&self.rhs)
            .map(|(r, &bi)| {
                let mut v: Vec<u32> = images.iter().map(|&j| r[j]).collect();
                v.push(bi);
                v
            })
            .collect();
        rows.sort_unstable();
        rows
    }
}

/// The full symmetry group, by backtracking over column images pruned by
/// column signatures and by the augmented-row multiset of every prefix.
pub fn full_symmetry_group(inst: &IpInstance, detection_cap: usize) -> Result<PermGroup> {
    let n = inst.n();
    if n > detection_cap {
        return Err(Error::CapExceeded {
            what: "dimension for symmetry detection",
            size: n as u128,
            cap: detection_cap as u128,
        });
    }
    let data = InternedInstance::new(inst);
    let sigs: Vec<_> = (0..n).map(|j| data.column_signature(j)).collect();
    let identity: Vec<usize> = (0..n).collect();
    let targets: Vec<Vec<Vec<u32>>> = (0..=n)
        .map(|t| data.prefix_multiset(&identity[..t]))
        .collect();

    let mut elements = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn search(
        data: &InternedInstance,
        sigs: &[(u32, Vec<u32>)],
        targets: &[Vec<Vec<u32>>],
        images: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        let t = images.len();
        let n = used.len();
        if t == n {
            out.push(Permutation {
                images: images.clone(),
            });
            return;
        }
        for cand in 0..n {
            if used[cand] || sigs[cand] != sigs[t] {
                continue;
            }
            images.push(cand);
            if data.prefix_multiset(images) == targets[t + 1] {
                used[cand] = true;
                search(data, sigs, targets, images, used, out);
                used[cand] = false;
            }
            images.pop();
        }
    }
    search(
        &data,
        &sigs,
        &targets,
        &mut images,
        &mut used,
        &mut elements,
    );
    debug_assert!(elements.iter().all(|g| is_symmetry(inst, g).is_some()));

    let generators = reduce_generators(n, &elements);
    elements.sort();
    Ok(PermGroup {
        degree: n,
        generators,
        elements: Some(elements),
    })
}

/// Greedy generating set: keep an element whenever it lies outside the span of those kept so far.
fn reduce_generators(n: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let mut queue: VecDeque<Permutation> = span.iter().cloned().collect();
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = p.then(g);
                if span.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

/// The orbit `x^G`, sorted.
pub fn orbit_of_point(group: &PermGroup, x: &Point) -> Result<Vec<Point>> {
    if x.dim() != group.degree() {
        return Err(Error::DimensionMismatch {
            expected: group.degree(),
            got: x.dim(),
        });
    }
    let mut seen: HashSet<Point> = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(p) = queue.pop_front() {
        for g in group.generators() {
            let q = g.apply_to_point(&p)?;
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let mut out: Vec<Point> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn orbit_size<F>(group: &PermGroup, start: Vec<usize>, act: F) -> usize
where
    F: Fn(&Permutation, &[usize]) -> Vec<usize>,
{
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for g in group.generators() {
            let u = act(g, &t);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen.len()
}

fn check_degree(group: &PermGroup, k: usize) -> Result<()> {
    let n = group.degree();
    if k == 0 || k > n {
        return Err(Error::DegreeOutOfRange { k, n });
    }
    Ok(())
}

/// `n·(n−1)⋯(n−k+1)`.
pub fn falling_factorial(n: usize, k: usize) -> u128 {
    (0..k).map(|i| (n - i) as u128).product()
}

/// Whether the orbit of the ordered tuple `(1,…,k)` is all `n!/(n−k)!` tuples.
pub fn is_k_transitive(group: &PermGroup, k: usize) -> Result<bool> {
    check_degree(group, k)?;
    let size = orbit_size(group, (0..k).collect(), |g, t| g.apply_to_tuple(t));
    Ok(size as u128 == falling_factorial(group.degree(), k))
}

/// Whether the orbit of the set `{1,…,k}` is all `binom(n, k)` subsets.
pub fn is_k_homogeneous(group: &PermGroup, k: usize) -> Result<bool> {
    check_degree(group, k)?;
    let size = orbit_size(group, (0..k).collect(), |g, s| g.apply_to_set(s));
    Ok(BigInt::from(size) == crate::layers::binomial(group.degree(), k))
}

/// Largest `k` for which the group is `k`-transitive (0 if not even transitive).
pub fn transitivity_degree(group: &PermGroup) -> Result<usize> {
    let mut best = 0;
    for k in 1..=group.degree() {
        if !is_k_transitive(group, k)? {
            break;
        }
        best = k;
    }
    Ok(best)
}

/// Largest `k ≤ n/2` for which the group is `k`-homogeneous (0 if none).
///
/// Homogeneity is symmetric (`k` and `n−k`) and not monotone beyond `n/2`, so the scan stops there.
pub fn homogeneity_degree(group: &PermGroup) -> Result<usize> {
    let mut best = 0;
    for k in 1..=(group.degree() / 2).max(1).min(group.degree()) {
        if !is_k_homogeneous(group, k)? {
            break;
        }
        best = k;
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborOrbit {
    pub representative: Point,
    pub size: usize,
}

/// Partition of the neighbor set of layer `k` (for `c′ = (1,…,1)`) into orbits.
pub fn neighbor_orbits(
    group: &PermGroup,
    n: usize,
    k: &BigInt,
    cap: usize,
) -> Result<Vec<NeighborOrbit>> {
    if group.degree() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: group.degree(),
        });
    }
    let ns: NeighborSet = neighbor_set(n, k);
    let total = ns.len();
    if total > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what: "neighbor set",
            size: u128::try_from(&total).unwrap_or(u128::MAX),
            cap: cap as u128,
        });
    }
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for pos in ns.position_sets() {
        if visited.contains(&pos) {
            continue;
        }
        let mut size = 0;
        let mut queue = VecDeque::from([pos.clone()]);
        visited.insert(pos.clone());
        while let Some(s) = queue.pop_front() {
            size += 1;
            for g in group.generators() {
                let t = g.apply_to_set(&s);
                if visited.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        out.push(NeighborOrbit {
            representative: ns.point_for(&pos),
            size,
        });
    }
    Ok(out)
}

/// Finds `g ∈ G` with `from^g = to` and `fixed_set^g = fixed_set` (setwise), by BFS over
/// generator words acting on the pair (image of `from`, image of `fixed_set`).
pub fn find_mapping_element(
    group: &PermGroup,
    from: usize,
    to: usize,
    fixed_set: &[usize],
) -> Option<Permutation> {
    let n = group.degree();
    if from >= n || to >= n || fixed_set.iter().any(|&j| j >= n) {
        return None;
    }
    let mut set: Vec<usize> = fixed_set.to_vec();
    set.sort_unstable();
    set.dedup();
    type State = (usize, Vec<usize>);
    let start: State = (from, set.clone());
    let goal: State = (to, set);
    let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    while let Some(state) = queue.pop_front() {
        if state == goal {
            found = Some(state);
            break;
        }
        for (gi, g) in group.generators().iter().enumerate() {
            let next = (g.image(state.0), g.apply_to_set(&state.1));
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((state.clone(), gi)));
                queue.push_back(next);
            }
        }
    }
    let mut state = found?;
    let mut word = Vec::new();
    while let Some(Some((prev, gi))) = parent.get(&state) {
        word.push(*gi);
        state = prev.clone();
    }
    word.reverse();
    let g = word.iter().fold(Permutation::identity(n), |acc, &gi| {
        acc.then(&group.generators()[gi])
    });
    Some(g)
}
