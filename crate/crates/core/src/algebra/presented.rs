//! Algebras given by generators and rewrite rules, truncated at a degree
//! bound. Words are ordered degree-first, then lexicographically on
//! generator indices. No completion is attempted: reduction applies the
//! given rules until no leading word occurs.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::exactlin::{Matrix, Rational};

pub type Word = Vec<usize>;

/// Linear combination of words.
pub type Element = BTreeMap<DegLex, Rational>;

/// A word under the degree-then-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegLex(pub Word);

impl Ord for DegLex {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for DegLex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn deglex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// `lead -> Σ c · tail`, every tail word strictly below `lead`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Word,
    pub tail: Vec<(Word, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("rule {rule}: tail word {word:?} is not below the leading word")]
    TailNotSmaller { rule: usize, word: Word },
    #[error("rule {0} has an empty leading word")]
    EmptyLead(usize),
    #[error("rule {rule} mentions generator {generator}, but only {count} exist")]
    UnknownGenerator {
        rule: usize,
        generator: usize,
        count: usize,
    },
}

/// A product whose normal form leaves the degree bound.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("normal form contains word {word:?} of degree above the bound {bound}")]
pub struct Overflow {
    pub word: Word,
    pub bound: usize,
}

#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    generators: Vec<String>,
    rules: Vec<RewriteRule>,
    degree_bound: usize,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl PresentedAlgebra {
    pub fn new(
        generators: Vec<String>,
        rules: Vec<RewriteRule>,
        degree_bound: usize,
    ) -> Result<Self, PresentationError> {
        let g = generators.len();
        for (i, r) in rules.iter().enumerate() {
            if r.lead.is_empty() {
                return Err(PresentationError::EmptyLead(i));
            }
            for w in std::iter::once(&r.lead).chain(r.tail.iter().map(|(w, _)| w)) {
                if let Some(&x) = w.iter().find(|&&x| x >= g) {
                    return Err(PresentationError::UnknownGenerator {
                        rule: i,
                        generator: x,
                        count: g,
                    });
                }
            }
            if let Some((w, _)) = r.tail.iter().find(|(w, _)| deglex_cmp(w, &r.lead) != Ordering::Less) {
                return Err(PresentationError::TailNotSmaller {
                    rule: i,
                    word: w.clone(),
                });
            }
        }
        let mut alg = PresentedAlgebra {
            generators,
            rules,
            degree_bound,
            basis: Vec::new(),
            index: HashMap::new(),
        };
        // Irreducible words are closed under taking prefixes.
        let mut layer = vec![Word::new()];
        let mut basis = vec![Word::new()];
        for _ in 0..degree_bound {
            let mut next = Vec::new();
            for w in &layer {
                for x in 0..g {
                    let mut u = w.clone();
                    u.push(x);
                    if alg.find_redex(&u).is_none() {
                        next.push(u);
                    }
                }
            }
            basis.extend(next.iter().cloned());
            layer = next;
        }
        alg.index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        alg.basis = basis;
        Ok(alg)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn word_label(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&x| self.generators[x].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Leftmost occurrence of a leading word; ties go to the first rule.
    fn find_redex(&self, w: &[usize]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, r) in self.rules.iter().enumerate() {
                if w[pos..].starts_with(&r.lead) {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// Normal form: repeatedly rewrites the largest reducible word.
    pub fn reduce(&self, e: &Element) -> Element {
        let mut cur: Element = e
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        loop {
            let hit = cur
                .iter()
                .rev()
                .find_map(|(w, _)| self.find_redex(&w.0).map(|r| (w.clone(), r)));
            let Some((w, (pos, ri))) = hit else {
                return cur;
            };
            let c = cur.remove(&w).expect("present");
            let rule = &self.rules[ri];
            for (t, ct) in &rule.tail {
                let mut u = w.0[..pos].to_vec();
                u.extend_from_slice(t);
                u.extend_from_slice(&w.0[pos + rule.lead.len()..]);
                let key = DegLex(u);
                let v = cur.entry(key.clone()).or_insert_with(Rational::zero);
                *v += &c * ct;
                if v.is_zero() {
                    cur.remove(&key);
                }
            }
        }
    }

    /// Coordinates of the normal form in the truncated basis.
    pub fn coordinates(&self, e: &Element) -> Result<Vec<Rational>, Overflow> {
        let nf = self.reduce(e);
        let mut out = vec![Rational::zero(); self.dim()];
        for (w, c) in nf {
            match self.index.get(&w.0) {
                Some(&i) => out[i] = c,
                None => {
                    return Err(Overflow {
                        word: w.0,
                        bound: self.degree_bound,
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn word_coordinates(&self, w: &[usize]) -> Result<Vec<Rational>, Overflow> {
        self.coordinates(&element_of_word(w))
    }

    pub fn element(&self, coords: &[Rational]) -> Element {
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (DegLex(self.basis[i].clone()), c.clone()))
            .collect()
    }

    pub fn multiply_basis(&self, i: usize, j: usize) -> Result<Vec<Rational>, Overflow> {
        let w = [self.basis[i].as_slice(), self.basis[j].as_slice()].concat();
        self.word_coordinates(&w)
    }

    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Result<Vec<Rational>, Overflow> {
        let mut e = Element::new();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = DegLex([self.basis[i].as_slice(), self.basis[j].as_slice()].concat());
                *e.entry(w).or_insert_with(Rational::zero) += ai * bj;
            }
        }
        self.coordinates(&e)
    }

    /// The unit `1` (the empty word).
    pub fn unit(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[0] = Rational::one();
        v
    }
}

pub fn element_of_word(w: &[usize]) -> Element {
    let mut e = Element::new();
    e.insert(DegLex(w.to_vec()), Rational::one());
    e
}

/// Interreduces linear relations `Σ c_w w = 0` into rewrite rules with
/// distinct leading words (Gaussian elimination in decreasing word order).
pub fn rules_from_relations(relations: &[Element]) -> Vec<RewriteRule> {
    let mut words: Vec<DegLex> = relations.iter().flat_map(|r| r.keys().cloned()).collect();
    words.sort();
    words.dedup();
    words.reverse();
    let col: HashMap<&DegLex, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rows: Vec<Vec<Rational>> = relations
        .iter()
        .map(|r| {
            let mut row = vec![Rational::zero(); words.len()];
            for (w, c) in r {
                row[col[w]] += c;
            }
            row
        })
        .collect();
    if rows.is_empty() || words.is_empty() {
        return Vec::new();
    }
    let rref = Matrix::from_rows(words.len(), rows).expect("rows").rref();
    let mut out = Vec::new();
    for (r, &p) in rref.pivot_columns.iter().enumerate() {
        let tail = (p + 1..words.len())
            .filter_map(|c| {
                let x = rref.reduced.get(r, c);
                (!x.is_zero()).then(|| (words[c].0.clone(), -x))
            })
            .collect();
        out.push(RewriteRule {
            lead: words[p].0.clone(),
            tail,
        });
    }
    out
}

/// A right module over a presented algebra, given by the action matrices
/// of the generators. For a word `w = x_1 ... x_k`, `v · w` has matrix
/// `R(x_k) ... R(x_1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedModule {
    pub dim: usize,
    pub generators: Vec<Matrix>,
}

impl PresentedModule {
    pub fn word_matrix(&self, w: &[usize]) -> Matrix {
        w.iter()
            .fold(Matrix::identity(self.dim), |acc, &x| &self.generators[x] * &acc)
    }

    pub fn element_matrix(&self, e: &Element) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (w, c) in e {
            out = &out + &self.word_matrix(&w.0).scale(c);
        }
        out
    }

    /// Index of the first rule the generator matrices violate.
    pub fn violated_rule(&self, alg: &PresentedAlgebra) -> Option<usize> {
        alg.rules().iter().position(|r| {
            let mut rhs = Matrix::zeros(self.dim, self.dim);
            for (t, c) in &r.tail {
                rhs = &rhs + &self.word_matrix(t).scale(c);
            }
            self.word_matrix(&r.lead) != rhs
        })
    }

    pub fn zero(generators: usize) -> Self {
        PresentedModule {
            dim: 0,
            generators: vec![Matrix::zeros(0, 0); generators],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    fn square_zero(g: usize) -> Vec<RewriteRule> {
        (0..g)
            .map(|x| RewriteRule {
                lead: vec![x, x],
                tail: vec![],
            })
            .collect()
    }

    #[test]
    fn dual_numbers() {
        let a = PresentedAlgebra::new(vec!["x".into()], square_zero(1), 6).unwrap();
        assert_eq!(a.basis(), &[vec![], vec![0]]);
    }

    #[test]
    fn free_product_of_dual_numbers() {
        let a = PresentedAlgebra::new(vec!["x".into(), "y".into()], square_zero(2), 3).unwrap();
        let labels: Vec<String> = a.basis().iter().map(|w| a.word_label(w)).collect();
        assert_eq!(labels, ["1", "x", "y", "x*y", "y*x", "x*y*x", "y*x*y"]);
        assert!(a.multiply_basis(3, 3).is_err());
        assert_eq!(a.multiply_basis(1, 1).unwrap(), vec![q(0); 7]);
    }

    #[test]
    fn free_algebra_counts() {
        let a = PresentedAlgebra::new(vec!["x".into(), "y".into()], vec![], 2).unwrap();
        assert_eq!(a.dim(), 7);
    }

    #[test]
    fn rejects_bad_leading_terms() {
        let r = RewriteRule {
            lead: vec![0],
            tail: vec![(vec![0, 0], q(1))],
        };
        assert!(matches!(
            PresentedAlgebra::new(vec!["x".into()], vec![r], 3),
            Err(PresentationError::TailNotSmaller { .. })
        ));
    }

    #[test]
    fn interreduction_gives_distinct_leads() {
        // yx - xy = 0, yx + x = 0  =>  yx -> -x, xy -> -x
        let rel =
            |terms: &[(&[usize], i64)]| -> Element { terms.iter().map(|(w, c)| (DegLex(w.to_vec()), q(*c))).collect() };
        let rules = rules_from_relations(&[rel(&[(&[1, 0], 1), (&[0, 1], -1)]), rel(&[(&[1, 0], 1), (&[0], 1)])]);
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].lead, vec![1, 0]);
        assert_eq!(rules[1].lead, vec![0, 1]);
        assert_eq!(rules[1].tail, vec![(vec![0], q(-1))]);
    }

    #[test]
    fn module_relations() {
        let a = PresentedAlgebra::new(vec!["x".into()], square_zero(1), 4).unwrap();
        let good = PresentedModule {
            dim: 2,
            generators: vec![Matrix::from_i64(&[&[0, 0], &[1, 0]])],
        };
        assert_eq!(good.violated_rule(&a), None);
        let bad = PresentedModule {
            dim: 1,
            generators: vec![Matrix::identity(1)],
        };
        assert_eq!(bad.violated_rule(&a), Some(0));
    }
}
