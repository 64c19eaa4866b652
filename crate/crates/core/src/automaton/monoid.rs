//! Finite monoids given by multiplication tables, and functions presented by
//! a morphism into a finite monoid together with a production function.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::WeightedAutomaton;
use crate::linalg::SparseMatrix;
use crate::{Error, Result};

/// Upper limit on the number of states of [`MonoidPresentation::to_automaton`].
pub const PRESENTATION_STATE_LIMIT: usize = 200_000;

/// `f(w) = Σ_{w = u₁⋯u_{d+1}} π(μ(u₁), …, μ(u_{d+1}))`.
///
/// Elements are the indices `0..size`; `table[x][y]` is the product `x·y`.
/// Tuples missing from `production` have value zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    table: Vec<Vec<u32>>,
    identity: u32,
    morphism: BTreeMap<char, u32>,
    degree: usize,
    production: BTreeMap<Vec<u32>, BigInt>,
}

fn check_table(table: &[Vec<u32>], identity: u32) -> Result<()> {
    let n = table.len();
    if n == 0 {
        return Err(Error::InvalidPresentation("the monoid is empty".into()));
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "row {x} of the table has length {}, expected {n}",
                row.len()
            )));
        }
        if let Some(bad) = row.iter().find(|&&y| y as usize >= n) {
            return Err(Error::InvalidPresentation(format!(
                "table entry {bad} is not an element"
            )));
        }
    }
    let e = identity as usize;
    if e >= n {
        return Err(Error::InvalidPresentation(format!(
            "identity {identity} is not an element"
        )));
    }
    for x in 0..n {
        if table[e][x] as usize != x || table[x][e] as usize != x {
            return Err(Error::InvalidPresentation(format!(
                "{identity} is not an identity for element {x}"
            )));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = table[x][y] as usize;
            for z in 0..n {
                let yz = table[y][z] as usize;
                if table[xy][z] != table[x][yz] {
                    return Err(Error::InvalidPresentation(format!(
                        "multiplication is not associative on ({x}, {y}, {z})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `x^{|M|+1} = x^{|M|}` for every element. Assumes a valid table.
pub fn is_aperiodic_monoid(table: &[Vec<u32>]) -> bool {
    let n = table.len();
    (0..n).all(|x| {
        let mut p = x;
        for _ in 1..n {
            p = table[p][x] as usize;
        }
        table[p][x] as usize == p
    })
}

impl MonoidPresentation {
    pub fn new(
        table: Vec<Vec<u32>>,
        identity: u32,
        morphism: BTreeMap<char, u32>,
        degree: usize,
        production: BTreeMap<Vec<u32>, BigInt>,
    ) -> Result<Self> {
        check_table(&table, identity)?;
        let n = table.len();
        if let Some((a, x)) = morphism.iter().find(|(_, &x)| x as usize >= n) {
            return Err(Error::InvalidPresentation(format!(
                "letter `{a}` is mapped to {x}, which is not an element"
            )));
        }
        for tuple in production.keys() {
            if tuple.len() != degree + 1 {
                return Err(Error::InvalidPresentation(format!(
                    "production tuple {tuple:?} should have {} entries",
                    degree + 1
                )));
            }
            if tuple.iter().any(|&x| x as usize >= n) {
                return Err(Error::InvalidPresentation(format!(
                    "production tuple {tuple:?} mentions a non-element"
                )));
            }
        }
        let production = production.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(MonoidPresentation {
            table,
            identity,
            morphism,
            degree,
            production,
        })
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn morphism(&self) -> &BTreeMap<char, u32> {
        &self.morphism
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn production(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.production
    }

    pub fn alphabet(&self) -> Vec<char> {
        self.morphism.keys().copied().collect()
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize][y as usize]
    }

    fn image(&self, a: char) -> Result<u32> {
        self.morphism.get(&a).copied().ok_or(Error::UnknownLetter(a))
    }

    fn pi(&self, tuple: &[u32]) -> BigInt {
        self.production.get(tuple).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sums the production function over every factorization of `w` into
    /// `d + 1` possibly empty factors.
    pub fn evaluate(&self, w: &str) -> Result<BigInt> {
        let images: Vec<u32> = w.chars().map(|a| self.image(a)).collect::<Result<_>>()?;
        let mut tuple = Vec::with_capacity(self.degree + 1);
        Ok(self.sum_from(&images, 0, &mut tuple))
    }

    fn sum_from(&self, images: &[u32], start: usize, tuple: &mut Vec<u32>) -> BigInt {
        if tuple.len() == self.degree {
            let last = images[start..]
                .iter()
                .fold(self.identity, |acc, &x| self.mul(acc, x));
            tuple.push(last);
            let v = self.pi(tuple);
            tuple.pop();
            return v;
        }
        let mut total = BigInt::zero();
        let mut factor = self.identity;
        for end in start..=images.len() {
            if end > start {
                factor = self.mul(factor, images[end - 1]);
            }
            tuple.push(factor);
            total += self.sum_from(images, end, tuple);
            tuple.pop();
        }
        total
    }

    /// Builds an automaton computing the same function.
    ///
    /// A state `(m₁, …, m_j)` records the images of the completed factors and
    /// of the current factor `j`. Reading a letter either extends the current
    /// factor or closes it, skips empty factors and starts a later one.
    pub fn to_automaton(&self) -> Result<WeightedAutomaton> {
        let alphabet = self.alphabet();
        if alphabet.is_empty() {
            return Err(Error::InvalidPresentation("the morphism is empty".into()));
        }
        let slots = self.degree + 1;
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut states: Vec<Vec<u32>> = Vec::new();
        let mut edges: Vec<(char, usize, usize)> = Vec::new();
        let start = vec![self.identity];
        index.insert(start.clone(), 0);
        states.push(start);
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            let state = states[s].clone();
            for &a in &alphabet {
                let x = self.morphism[&a];
                let mut targets = Vec::new();
                let mut stay = state.clone();
                let last = stay.len() - 1;
                stay[last] = self.mul(stay[last], x);
                targets.push(stay);
                for j in state.len() + 1..=slots {
                    let mut t = state.clone();
                    t.resize(j - 1, self.identity);
                    t.push(x);
                    targets.push(t);
                }
                for t in targets {
                    let id = match index.get(&t) {
                        Some(&id) => id,
                        None => {
                            if states.len() >= PRESENTATION_STATE_LIMIT {
                                return Err(Error::TooLarge(format!(
                                    "more than {PRESENTATION_STATE_LIMIT} states"
                                )));
                            }
                            let id = states.len();
                            index.insert(t.clone(), id);
                            states.push(t);
                            queue.push_back(id);
                            id
                        }
                    };
                    edges.push((a, s, id));
                }
            }
        }
        let dim = states.len();
        let mut matrices: BTreeMap<char, SparseMatrix> =
            alphabet.iter().map(|&a| (a, SparseMatrix::zero(dim))).collect();
        for (a, s, t) in edges {
            matrices
                .get_mut(&a)
                .expect("letter of the alphabet")
                .add_entry(s, t, &BigInt::one());
        }
        let mut initial = vec![BigInt::zero(); dim];
        initial[0] = BigInt::one();
        let final_weights = states
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.resize(slots, self.identity);
                self.pi(&t)
            })
            .collect();
        WeightedAutomaton::new(&alphabet, initial, matrices, final_weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn presentation(
        table: Vec<Vec<u32>>,
        identity: u32,
        letters: &[(char, u32)],
        degree: usize,
        production: &[(Vec<u32>, i64)],
    ) -> MonoidPresentation {
        MonoidPresentation::new(
            table,
            identity,
            letters.iter().copied().collect(),
            degree,
            production
                .iter()
                .map(|(t, v)| (t.clone(), BigInt::from(*v)))
                .collect(),
        )
        .unwrap()
    }

    fn length_plus_one() -> MonoidPresentation {
        presentation(vec![vec![0]], 0, &[('a', 0), ('b', 0)], 1, &[(vec![0, 0], 1)])
    }

    fn pairs() -> MonoidPresentation {
        // ({0, 1}, max) with π(x, y, z) = x·y
        presentation(
            vec![vec![0, 1], vec![1, 1]],
            0,
            &[('a', 1)],
            2,
            &[(vec![1, 1, 0], 1), (vec![1, 1, 1], 1)],
        )
    }

    #[test]
    fn brute_force_values() {
        let p = length_plus_one();
        assert_eq!(p.evaluate("abba").unwrap(), BigInt::from(5));
        let q = pairs();
        for n in 0..8u32 {
            let w = "a".repeat(n as usize);
            assert_eq!(q.evaluate(&w).unwrap(), BigInt::from(n * n.saturating_sub(1) / 2));
        }
        let c = presentation(vec![vec![0]], 0, &[('a', 0)], 0, &[(vec![0], 7)]);
        assert_eq!(c.evaluate("aaa").unwrap(), BigInt::from(7));
        assert!(matches!(c.evaluate("b"), Err(Error::UnknownLetter('b'))));
    }

    #[test]
    fn automaton_agrees_with_brute_force() {
        let p = length_plus_one();
        let a = p.to_automaton().unwrap();
        for w in ["", "a", "ab", "bab", "abbaab", "aaaaaaaa"] {
            assert_eq!(a.evaluate(w).unwrap(), p.evaluate(w).unwrap());
        }
        let q = pairs();
        let b = q.to_automaton().unwrap();
        for n in 0..=10 {
            let w = "a".repeat(n);
            assert_eq!(b.evaluate(&w).unwrap(), q.evaluate(&w).unwrap());
        }
        let c = presentation(vec![vec![0]], 0, &[('a', 0)], 0, &[(vec![0], 7)]);
        let ca = c.to_automaton().unwrap();
        assert_eq!(ca.dim(), 1);
        assert_eq!(ca.matrix('a').unwrap(), &SparseMatrix::identity(1));
    }

    #[test]
    fn validation() {
        let bad_identity = MonoidPresentation::new(
            vec![vec![0, 1], vec![1, 1]],
            1,
            BTreeMap::new(),
            0,
            BTreeMap::new(),
        );
        assert!(bad_identity.is_err());
        // x·y = y is associative but has no identity on two elements
        let no_identity = check_table(&[vec![0, 1], vec![0, 1]], 0);
        assert!(no_identity.is_err());
        let non_assoc = check_table(&[vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 2]], 0);
        assert!(non_assoc.is_err());
    }

    #[test]
    fn aperiodicity() {
        assert!(is_aperiodic_monoid(&[vec![0, 1], vec![1, 1]]));
        assert!(!is_aperiodic_monoid(&[vec![0, 1], vec![1, 0]]));
        assert!(is_aperiodic_monoid(&[vec![0]]));
    }
}
