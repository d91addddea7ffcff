//! Permutations, cycle structure, and canonical forms of permutation pairs
//! under simultaneous conjugation.
//!
//! Composition is right-to-left: `compose(p, q)` applies `q` first.
//! Internally points are `0..n`; cycle notation at the API boundary is
//! 1-indexed, e.g. `(1,2)(3)`.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A bijection of `{0..n-1}`, stored by its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    /// Build from a 0-indexed image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Build from a 1-indexed image table (the external format).
    pub fn from_one_indexed(images: &[u32]) -> Result<Self> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::NotBijection);
        }
        Perm::from_images(images.iter().map(|&x| x - 1).collect())
    }

    pub fn one_indexed(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// Build from 1-indexed cycles; entries not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for k in 0..cyc.len() {
                let a = cyc[k];
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || a as usize > n || b == 0 {
                    return Err(Error::Parse(format!("cycle entry {} out of range 1..{}", a, n)));
                }
                let a = (a - 1) as usize;
                if touched[a] {
                    return Err(Error::Parse("point repeated across cycles".into()));
                }
                touched[a] = true;
                images[a] = b - 1;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn inv(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let n = self.degree();
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = compose(&base, &acc).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = compose(&base, &base).unwrap();
            }
        }
        acc
    }

    /// Disjoint cycles (0-indexed), each rotated to start at its least point,
    /// sorted by that point.  Fixed points are included as length-1 cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Sorted multiset of cycle lengths, descending, length-1 cycles included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions: usize =
            self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Parse 1-indexed cycle notation, e.g. `(1,2)(3)`; omitted points are
    /// fixed, so the degree must be supplied.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Perm> {
        let s = s.trim();
        if s == "id" || s.is_empty() || s == "()" {
            return Ok(Perm::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' in cycle notation near '{}'", rest)));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?;
            let inner = &rest[1..close];
            let cyc: Result<Vec<u32>> = inner
                .split(|c| c == ',' || c == ' ')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad cycle entry '{}'", t)))
                })
                .collect();
            cycles.push(cyc?);
            rest = &rest[close + 1..];
        }
        Perm::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Perm {
    /// 1-indexed cycle notation with fixed points shown, e.g. `(1,2)(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "()");
        }
        for cyc in self.cycles() {
            let parts: Vec<String> = cyc.iter().map(|&x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `(p ∘ q)(x) = p(q(x))`: apply `q` first.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    let images = (0..q.degree()).map(|x| p.images[q.apply(x)]).collect();
    Ok(Perm { images })
}

/// The commutator `[h,v] = v h v^{-1} h^{-1}`.  Its nontrivial cycles sit at
/// the cone points of the glued surface.
pub fn commutator(h: &Perm, v: &Perm) -> Result<Perm> {
    if h.degree() != v.degree() {
        return Err(Error::DegreeMismatch(h.degree(), v.degree()));
    }
    let hi = h.inv();
    let vi = v.inv();
    compose(v, &compose(h, &compose(&vi, &hi)?)?)
}

/// Conjugate: `phi p phi^{-1}`.
pub fn conjugate(phi: &Perm, p: &Perm) -> Result<Perm> {
    compose(phi, &compose(p, &phi.inv())?)
}

/// Whether `<h, v>` acts transitively on the points.
pub fn is_transitive(h: &Perm, v: &Perm) -> bool {
    let n = h.degree();
    if n == 0 || h.degree() != v.degree() {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in [h.apply(x), v.apply(x), h.inv_apply(x), v.inv_apply(x)] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

impl Perm {
    #[inline]
    fn inv_apply(&self, x: usize) -> usize {
        // O(n); only used in transitivity sweeps where it is dominated anyway
        self.images.iter().position(|&y| y as usize == x).unwrap()
    }
}

/// A pair of permutations modulo simultaneous conjugation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairClass {
    h: Perm,
    v: Perm,
    canonical: bool,
}

impl PairClass {
    pub fn new(h: Perm, v: Perm) -> Result<Self> {
        if h.degree() != v.degree() {
            return Err(Error::DegreeMismatch(h.degree(), v.degree()));
        }
        Ok(PairClass { h, v, canonical: false })
    }

    pub fn h(&self) -> &Perm {
        &self.h
    }

    pub fn v(&self) -> &Perm {
        &self.v
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }

    pub fn is_canonical_flagged(&self) -> bool {
        self.canonical
    }
}

impl fmt::Debug for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={}; v={}; n={}", self.h, self.v, self.degree())
    }
}

/// Canonical representative of the simultaneous-conjugacy class of a
/// transitive pair, plus the relabeling that conjugates the input onto it.
///
/// The representative is produced by breadth-first relabeling from every
/// start square, exploring the `h` edge before the `v` edge, and taking the
/// lexicographically least of the `n` candidate image tables.
pub fn canonicalize(h: &Perm, v: &Perm) -> Result<(PairClass, Perm)> {
    let (pair, rho, _) = canonicalize_full(h, v)?;
    Ok((pair, rho))
}

/// As `canonicalize`, also returning every start square whose BFS relabeling
/// realizes the minimum (these index the automorphisms of the pair).
fn canonicalize_full(h: &Perm, v: &Perm) -> Result<(PairClass, Perm, Vec<Perm>)> {
    if h.degree() != v.degree() {
        return Err(Error::DegreeMismatch(h.degree(), v.degree()));
    }
    if !is_transitive(h, v) {
        return Err(Error::Disconnected);
    }
    let n = h.degree();
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    let mut best_rhos: Vec<Perm> = Vec::new();
    for start in 0..n {
        let rho = bfs_relabel(h, v, start);
        let hc = relabel(h, &rho);
        let vc = relabel(v, &rho);
        let cand = (hc, vc);
        match &best {
            None => {
                best = Some(cand);
                best_rhos = vec![rho];
            }
            Some(b) => {
                if cand < *b {
                    best = Some(cand);
                    best_rhos = vec![rho];
                } else if cand == *b {
                    best_rhos.push(rho);
                }
            }
        }
    }
    let (hc, vc) = best.unwrap();
    let pair = PairClass {
        h: Perm { images: hc },
        v: Perm { images: vc },
        canonical: true,
    };
    Ok((pair, best_rhos[0].clone(), best_rhos))
}

fn bfs_relabel(h: &Perm, v: &Perm, start: usize) -> Perm {
    let n = h.degree();
    let mut new_label = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    new_label[start] = 0;
    order.push(start);
    let mut next = 1u32;
    let mut head = 0usize;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for y in [h.apply(x), v.apply(x)] {
            if new_label[y] == u32::MAX {
                new_label[y] = next;
                next += 1;
                order.push(y);
            }
        }
    }
    debug_assert_eq!(next as usize, n);
    Perm { images: new_label }
}

/// Image table of `rho p rho^{-1}` without allocating intermediates.
fn relabel(p: &Perm, rho: &Perm) -> Vec<u32> {
    let n = p.degree();
    let mut out = vec![0u32; n];
    for x in 0..n {
        out[rho.apply(x)] = rho.images[p.apply(x)];
    }
    out
}

/// All relabelings `phi` with `phi h phi^{-1} = h` and `phi v phi^{-1} = v`,
/// i.e. the automorphism group of the glued surface.  For a transitive pair
/// the group acts freely, so its order divides the degree.
pub fn pair_automorphisms(h: &Perm, v: &Perm) -> Result<(usize, Vec<Perm>)> {
    if h.degree() != v.degree() {
        return Err(Error::DegreeMismatch(h.degree(), v.degree()));
    }
    if !is_transitive(h, v) {
        return Err(Error::Disconnected);
    }
    let n = h.degree();
    let mut auts = Vec::new();
    // An automorphism is determined by the image of square 0; propagate and check.
    for target in 0..n {
        if let Some(phi) = propagate_conjugator(h, v, h, v, target) {
            auts.push(phi);
        }
    }
    Ok((auts.len(), auts))
}

/// Find `phi` with `phi h1 = h2 phi` and `phi v1 = v2 phi` sending 0 to `target`,
/// i.e. a conjugation witness `phi (h1,v1) phi^{-1} = (h2,v2)`.
pub(crate) fn propagate_conjugator(
    h1: &Perm,
    v1: &Perm,
    h2: &Perm,
    v2: &Perm,
    target: usize,
) -> Option<Perm> {
    let n = h1.degree();
    let mut phi = vec![u32::MAX; n];
    let mut used = vec![false; n];
    phi[0] = target as u32;
    used[target] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let px = phi[x] as usize;
        for (y, py) in [(h1.apply(x), h2.apply(px)), (v1.apply(x), v2.apply(px))] {
            if phi[y] == u32::MAX {
                if used[py] {
                    return None;
                }
                phi[y] = py as u32;
                used[py] = true;
                stack.push(y);
            } else if phi[y] as usize != py {
                return None;
            }
        }
    }
    // transitive pairs reach every point; double-check completeness
    if phi.iter().any(|&x| x == u32::MAX) {
        return None;
    }
    Some(Perm { images: phi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_identity_and_involution() {
        let id = Perm::identity(3);
        let t = p(3, "(1,2)");
        assert_eq!(compose(&id, &t).unwrap(), t);
        assert_eq!(compose(&t, &t).unwrap(), id);
    }

    #[test]
    fn compose_is_right_to_left() {
        // (1,3) after (1,2): 1->2, 2->3, 3->1, i.e. the cycle (1,2,3)
        let a = p(3, "(1,3)");
        let b = p(3, "(1,2)");
        let c = compose(&a, &b).unwrap();
        assert_eq!(c, p(3, "(1,2,3)"));
    }

    #[test]
    fn commutator_of_l_shaped_pair_is_a_three_cycle() {
        let h = p(3, "(1,2)");
        let v = p(3, "(1,3)");
        let c = commutator(&h, &v).unwrap();
        assert_eq!(c.cycle_type(), vec![3]);
    }

    #[test]
    fn commutator_trivial_cases() {
        let v = p(4, "(1,2,3,4)");
        let id = Perm::identity(4);
        assert!(commutator(&id, &v).unwrap().is_identity());
        assert!(commutator(&v, &v).unwrap().is_identity());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Perm::identity(3).cycle_type(), vec![1, 1, 1]);
        assert_eq!(p(3, "(1,2,3)").cycle_type(), vec![3]);
    }

    #[test]
    fn canonicalize_idempotent() {
        let h = p(3, "(1,2)");
        let v = p(3, "(1,3)");
        let (c1, _) = canonicalize(&h, &v).unwrap();
        let (c2, rho) = canonicalize(c1.h(), c1.v()).unwrap();
        assert_eq!(c1, c2);
        assert!(rho.is_identity());
    }

    #[test]
    fn canonicalize_constant_on_class() {
        let h = p(3, "(1,2)");
        let v = p(3, "(1,3)");
        let phi = p(3, "(1,3)");
        let h2 = conjugate(&phi, &h).unwrap();
        let v2 = conjugate(&phi, &v).unwrap();
        let (c1, _) = canonicalize(&h, &v).unwrap();
        let (c2, _) = canonicalize(&h2, &v2).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn canonicalize_separates_classes() {
        // one-cylinder 3-square surface vs the L-shaped one
        let (a, _) = canonicalize(&p(3, "(1,2)"), &p(3, "(1,3)")).unwrap();
        let (b, _) = canonicalize(&p(3, "(1,2,3)"), &Perm::identity(3)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn relabeling_conjugates_input_to_output() {
        let h = p(5, "(1,2,3)(4,5)");
        let v = p(5, "(2,4)(3,5)");
        let (c, rho) = canonicalize(&h, &v).unwrap();
        assert_eq!(conjugate(&rho, &h).unwrap(), *c.h());
        assert_eq!(conjugate(&rho, &v).unwrap(), *c.v());
    }

    #[test]
    fn automorphisms_of_small_pairs() {
        let (ord, _) = pair_automorphisms(&Perm::identity(1), &Perm::identity(1)).unwrap();
        assert_eq!(ord, 1);
        let (ord, _) = pair_automorphisms(&p(3, "(1,2)"), &p(3, "(1,3)")).unwrap();
        assert_eq!(ord, 1);
        // 2-square torus cover: deck transformation is an automorphism
        let (ord, auts) = pair_automorphisms(&p(2, "(1,2)"), &p(2, "(1,2)")).unwrap();
        assert_eq!(ord, 2);
        assert!(auts.iter().any(|a| !a.is_identity()));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let q = p(5, "(1,2)(3,4,5)");
        let shown = q.to_string();
        let back = Perm::parse_cycles(&shown, 5).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn non_transitive_rejected() {
        let h = p(4, "(1,2)");
        let v = p(4, "(1,2)");
        assert!(matches!(canonicalize(&h, &v), Err(Error::Disconnected)));
    }
}
