use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

/// A finite group given by its multiplication table: `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("table is not square or has entries out of range")]
    Shape,
    #[error("the table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("({a}·{b})·{c} differs from {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("generator images are inconsistent at element {0}")]
    InconsistentGenerators(usize),
    #[error("the given generators do not generate the group")]
    NotGenerating,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::Shape);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or(GroupError::NoInverse(a))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// `Z_n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(table).expect("cyclic group")
    }

    /// Permutations of `0..k` in lexicographic order; `a·b = a ∘ b`.
    pub fn symmetric(k: usize) -> Self {
        let perms = crate::operad::all_permutations(k);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("perm");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect()))
                    .collect()
            })
            .collect();
        FiniteGroup::new(table).expect("symmetric group")
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteGroup::new(table).expect("product group")
    }

    /// `G^k`, elements as mixed-radix tuples with the first factor most
    /// significant.
    pub fn power(g: &FiniteGroup, k: usize) -> Self {
        (0..k).fold(FiniteGroup::trivial(), |acc, _| FiniteGroup::direct_product(&acc, g))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for a in self.elements() {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|g| self.conjugate(g, a)).collect();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        self.elements().filter(|&g| self.mul(g, a) == self.mul(a, g)).collect()
    }

    /// The subgroup on `elements` as a group in its own right, with the
    /// embedding (`embedding[i]` is the ambient element of local index `i`).
    pub fn subgroup(&self, elements: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut emb = elements.to_vec();
        emb.sort_unstable();
        emb.dedup();
        let local = |x: usize| emb.iter().position(|&e| e == x).expect("closed subset");
        let table = emb
            .iter()
            .map(|&a| emb.iter().map(|&b| local(self.mul(a, b))).collect())
            .collect();
        (FiniteGroup::new(table).expect("subgroup"), emb)
    }

    /// A small generating set found greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for a in self.elements() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut span = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if span.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        span
    }

    /// Every element as a word in `gens`, by breadth-first search:
    /// `paths[x] = Some((prev, g))` with `x = prev · g`.
    pub fn spanning_tree(&self, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
        let mut paths = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    paths[y] = Some((x, g));
                    queue.push_back(y);
                }
            }
        }
        paths
    }

    pub fn is_homomorphism_to(&self, target: &FiniteGroup, map: &[usize]) -> Result<(), GroupError> {
        if map.len() != self.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(GroupError::Shape);
        }
        for a in self.elements() {
            for b in self.elements() {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(())
    }
}

/// All homomorphisms `g -> h`, determined on a generating set of `g`.
pub fn all_homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = g.generators();
    let tree = g.spanning_tree(&gens);
    let order: Vec<usize> = {
        // elements in BFS order so that predecessors come first
        let mut v: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([g.identity()]);
        let mut seen = vec![false; g.order()];
        seen[g.identity()] = true;
        while let Some(x) = queue.pop_front() {
            v.push(x);
            for &s in &gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        v
    };
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    loop {
        let mut map = vec![usize::MAX; g.order()];
        map[g.identity()] = h.identity();
        for &x in &order[1..] {
            let (prev, s) = tree[x].expect("reachable");
            let si = gens.iter().position(|&t| t == s).expect("generator");
            map[x] = h.mul(map[prev], images[si]);
        }
        if g.is_homomorphism_to(h, &map).is_ok() {
            out.push(map);
        }
        let mut k = 0;
        while k < images.len() {
            images[k] += 1;
            if images[k] < h.order() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == images.len() {
            break;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(s3.exponent(), 6);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            FiniteGroup::new(vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse(1))
        );
        assert_eq!(FiniteGroup::new(vec![]), Err(GroupError::Shape));
    }

    #[test]
    fn homomorphism_counts() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(all_homomorphisms(&z2, &z3).len(), 1);
        assert_eq!(all_homomorphisms(&z3, &z3).len(), 3);
        assert_eq!(all_homomorphisms(&z2, &s3).len(), 4);
        assert_eq!(all_homomorphisms(&s3, &z2).len(), 2);
        assert_eq!(all_homomorphisms(&s3, &s3).len(), 10);
    }

    #[test]
    fn product_indexing() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let p = FiniteGroup::direct_product(&z2, &z3);
        let at = |a: usize, b: usize| a * 3 + b;
        assert_eq!(p.mul(at(1, 2), at(1, 2)), at(0, 1));
        assert!(p.is_abelian());
        assert_eq!(FiniteGroup::power(&z2, 3).order(), 8);
    }
}
