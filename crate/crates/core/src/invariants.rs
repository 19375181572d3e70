//! Link invariants of braid closures and braided surfaces.

use alloc::vec::Vec;
use core::fmt;

use crate::braid::{BandRepresentation, BraidWord, Letter, Sign};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::poly::{determinant, LaurentPolynomial, PolyMatrix};

fn identity(size: usize) -> PolyMatrix {
    (0..size)
        .map(|r| (0..size).map(|c| if r == c { LaurentPolynomial::one() } else { LaurentPolynomial::zero() }).collect())
        .collect()
}

/// Local 3×3 block of the reduced Burau image of a letter, on rows/columns `i−1, i, i+1`.
fn burau_block(sign: Sign) -> [[LaurentPolynomial; 3]; 3] {
    let p = |c: i64, e: i64| LaurentPolynomial::monomial(c, e);
    let z = LaurentPolynomial::zero;
    match sign {
        Sign::Pos => [[p(1, 0), p(1, 1), z()], [z(), p(-1, 1), z()], [z(), p(1, 0), p(1, 0)]],
        Sign::Neg => [[p(1, 0), p(1, 0), z()], [z(), p(-1, -1), z()], [z(), p(1, -1), p(1, 0)]],
    }
}

/// Right-multiplies `m` by the reduced Burau image of `letter`.
fn apply_letter(m: &mut PolyMatrix, letter: Letter) {
    let size = m.len();
    let block = burau_block(letter.sign);
    // block rows/columns sit at 0-based positions i−2, i−1, i; drop those outside the matrix
    let idx: Vec<(usize, usize)> = (0..3)
        .filter_map(|b| (letter.index + b).checked_sub(2).filter(|&x| x < size).map(|x| (b, x)))
        .collect();
    for row in m.iter_mut() {
        let old: Vec<LaurentPolynomial> = idx.iter().map(|&(_, x)| row[x].clone()).collect();
        for &(bc, xc) in &idx {
            let mut acc = LaurentPolynomial::zero();
            for (k, &(br, _)) in idx.iter().enumerate() {
                if !block[br][bc].is_zero() && !old[k].is_zero() {
                    acc = &acc + &(&old[k] * &block[br][bc]);
                }
            }
            row[xc] = acc;
        }
    }
}

/// Reduced Burau matrix of a word, `(n−1) × (n−1)`; multiplicative in the word.
pub fn reduced_burau(word: &BraidWord) -> PolyMatrix {
    let mut m = identity(word.strands().saturating_sub(1));
    for &letter in word.letters() {
        apply_letter(&mut m, letter);
    }
    m
}

/// Multiplies two square polynomial matrices.
pub fn matmul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    (0..n).fold(LaurentPolynomial::zero(), |acc, k| &acc + &(&a[r][k] * &b[k][c]))
                })
                .collect()
        })
        .collect()
}

/// Alexander polynomial of the closure, canonical form.
pub fn alexander_from_braid(word: &BraidWord) -> Result<LaurentPolynomial> {
    let n = word.strands();
    if n <= 1 {
        return Ok(LaurentPolynomial::one());
    }
    let mut m = reduced_burau(word);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = &row[k] - &LaurentPolynomial::one();
    }
    let det = determinant(&m)?;
    let divisor = LaurentPolynomial::from_coeffs(0, &alloc::vec![1; n]);
    det.div_exact(&divisor).map(|q| q.canonical()).ok_or(Error::NonExactDivision)
}

/// Square integer matrix of the Seifert form on a basis of `H_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("Seifert matrix must be square".into()));
        }
        Ok(Self { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r][c]
    }

    /// `P V Pᵀ`.
    pub fn congruent(&self, p: &[Vec<i64>]) -> SeifertMatrix {
        let n = self.size();
        let pv: Vec<Vec<i64>> =
            (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| p[r][k] * self.rows[k][c]).sum()).collect()).collect();
        let rows = (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| pv[r][k] * p[c][k]).sum()).collect()).collect();
        SeifertMatrix { rows }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Seifert matrix of the braidword surface of `word` on its loop basis.
///
/// Loop `i` runs between letter `i` and the next letter `h[i]` with the same
/// generator. Returns the matrix and, per loop, `(column, position of its lower letter)`.
fn braidword_seifert(x: &[i64]) -> (Vec<Vec<i64>>, Vec<usize>) {
    let len = x.len();
    let mut h = alloc::vec![0usize; len];
    for i in 0..len {
        if let Some(j) = (i + 1..len).find(|&j| x[j].abs() == x[i].abs()) {
            h[i] = j;
        }
    }
    let mut a = alloc::vec![alloc::vec![0i64; len]; len];
    let loops: Vec<usize> = (0..len).filter(|&i| h[i] != 0).collect();
    for &i in &loops {
        let hi = h[i];
        a[i][i] = -(x[i].signum() + x[hi].signum()) / 2;
        for j in i + 1..len {
            if h[j] == 0 || hi < j || hi > h[j] {
                continue;
            }
            if hi == j {
                if x[j] > 0 {
                    a[j][i] = 1;
                } else {
                    a[i][j] = -1;
                }
            } else if x[i].abs() - x[j].abs() == 1 {
                a[j][i] = -1;
            } else if x[j].abs() - x[i].abs() == 1 {
                a[i][j] = 1;
            }
        }
    }
    let rows = loops.iter().map(|&r| loops.iter().map(|&c| a[r][c]).collect()).collect();
    (rows, loops)
}

/// Seifert matrix of `S(rep)` on the fundamental cycles of its handle graph.
///
/// Each band is swapped for a chain of unit bands carrying it (ascending for
/// positive bands, descending and negative for negative ones); the form is
/// computed on the chain surface and pulled back along the inclusion.
pub fn seifert_matrix(rep: &BandRepresentation) -> SeifertMatrix {
    // fine word and, per band of rep, its fine letter positions
    let mut x: Vec<i64> = Vec::new();
    let mut block: Vec<Vec<usize>> = Vec::with_capacity(rep.len());
    for b in rep.bands() {
        let start = x.len();
        match b.sign {
            Sign::Pos => x.extend((b.i..b.j).map(|k| k as i64)),
            Sign::Neg => x.extend((b.i..b.j).rev().map(|k| -(k as i64))),
        }
        block.push((start..x.len()).collect());
    }
    let (a, loops) = braidword_seifert(&x);

    // fundamental cycles as integer chains over the bands of rep, oriented i → j
    let n = rep.strands();
    let mut dsu = Dsu::new(n);
    let mut tree_adj: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n + 1];
    let mut cotree = Vec::new();
    for (t, b) in rep.bands().iter().enumerate() {
        if dsu.union(b.i - 1, b.j - 1) {
            tree_adj[b.i].push((t, b.j));
            tree_adj[b.j].push((t, b.i));
        } else {
            cotree.push(t);
        }
    }
    let tree_path = |from: usize, to: usize| -> Vec<i64> {
        // chain of tree bands from `from` to `to`
        let mut prev: Vec<Option<(usize, usize)>> = alloc::vec![None; n + 1];
        let mut seen = alloc::vec![false; n + 1];
        let mut stack = alloc::vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for &(t, w) in &tree_adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((t, v));
                    stack.push(w);
                }
            }
        }
        let mut chain = alloc::vec![0i64; rep.len()];
        let mut v = to;
        while v != from {
            let (t, u) = prev[v].expect("tree path exists");
            let b = rep.bands()[t];
            chain[t] += if b.i == u { 1 } else { -1 };
            v = u;
        }
        chain
    };

    let mut coords: Vec<Vec<i64>> = Vec::with_capacity(cotree.len());
    for &t in &cotree {
        let b = rep.bands()[t];
        let mut chain = tree_path(b.j, b.i);
        chain[t] += 1;
        let mut fine = alloc::vec![0i64; x.len()];
        for (u, &c) in chain.iter().enumerate() {
            for &pos in &block[u] {
                fine[pos] += c;
            }
        }
        // prefix sums per column give loop coordinates
        let mut running: Vec<i64> = alloc::vec![0; n + 1];
        let mut at = alloc::vec![0i64; x.len()];
        for (pos, &g) in x.iter().enumerate() {
            let col = g.unsigned_abs() as usize;
            running[col] += fine[pos];
            at[pos] = running[col];
        }
        coords.push(loops.iter().map(|&l| at[l]).collect());
    }

    let r = coords.len();
    let l = loops.len();
    let ma: Vec<Vec<i64>> =
        (0..r).map(|p| (0..l).map(|c| (0..l).map(|k| coords[p][k] * a[k][c]).sum()).collect()).collect();
    let rows = (0..r).map(|p| (0..r).map(|q| (0..l).map(|k| ma[p][k] * coords[q][k]).sum()).collect()).collect();
    SeifertMatrix { rows }
}

/// `det(V − tVᵀ)` in canonical form.
pub fn alexander_from_seifert(v: &SeifertMatrix) -> LaurentPolynomial {
    let n = v.size();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let m: PolyMatrix = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    LaurentPolynomial::monomial(v.get(r, c), 0) - LaurentPolynomial::monomial(v.get(c, r), 1)
                })
                .collect()
        })
        .collect();
    determinant(&m).expect("integer Bareiss divisions are exact").canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::EmbeddedBand;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word(n: usize, letters: &[i64]) -> BraidWord {
        BraidWord::new(
            n,
            letters
                .iter()
                .map(|&x| if x > 0 { Letter::pos(x as usize) } else { Letter::neg((-x) as usize) })
                .collect(),
        )
        .unwrap()
    }

    fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> BraidWord {
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..n) as i64;
                if rng.gen_bool(0.5) { g } else { -g }
            })
            .collect();
        word(n, &letters)
    }

    fn poly(c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coeffs(0, c)
    }

    #[test]
    fn burau_basics() {
        assert_eq!(reduced_burau(&BraidWord::empty(2).unwrap()), identity(1));
        assert_eq!(reduced_burau(&word(3, &[1, -1])), identity(2));
        assert_eq!(reduced_burau(&word(4, &[-2, 2, 3, -3])), identity(3));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(2..6);
            let (a, b) = (random_word(&mut rng, n, 5), random_word(&mut rng, n, 5));
            let ab = a.concat(&b).unwrap();
            assert_eq!(reduced_burau(&ab), matmul(&reduced_burau(&a), &reduced_burau(&b)));
        }
    }

    #[test]
    fn burau_braid_relation() {
        assert_eq!(reduced_burau(&word(4, &[1, 2, 1])), reduced_burau(&word(4, &[2, 1, 2])));
        assert_eq!(reduced_burau(&word(4, &[1, 3])), reduced_burau(&word(4, &[3, 1])));
    }

    #[test]
    fn burau_det_at_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(2..6);
            let w = random_word(&mut rng, n, 6);
            let d = determinant(&reduced_burau(&w)).unwrap().eval_one();
            assert!(d == 1.into() || d == (-1).into());
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_from_braid(&word(2, &[1])).unwrap(), LaurentPolynomial::one());
        assert_eq!(alexander_from_braid(&word(2, &[1, 1, 1])).unwrap(), poly(&[1, -1, 1]));
        assert!(alexander_from_braid(&word(2, &[1, 1])).unwrap().eq_up_to_units(&poly(&[-1, 1])));
        assert_eq!(alexander_from_braid(&BraidWord::empty(1).unwrap()).unwrap(), LaurentPolynomial::one());
        // figure eight
        assert_eq!(alexander_from_braid(&word(3, &[1, -2, 1, -2])).unwrap(), poly(&[1, -3, 1]));
    }

    #[test]
    fn alexander_markov_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(2..5);
            let w = random_word(&mut rng, n, 6);
            let base = alexander_from_braid(&w).unwrap();
            let mut rotated = w.letters().to_vec();
            rotated.rotate_left(1);
            let conj = BraidWord::new(n, rotated).unwrap();
            assert_eq!(alexander_from_braid(&conj).unwrap(), base);
            let stab = w.widen(n + 1).unwrap().concat(&BraidWord::new(n + 1, alloc::vec![Letter::pos(n)]).unwrap());
            assert_eq!(alexander_from_braid(&stab.unwrap()).unwrap(), base);
        }
    }

    #[test]
    fn seifert_examples() {
        let empty = BandRepresentation::empty(2).unwrap();
        assert_eq!(seifert_matrix(&empty).size(), 0);
        assert_eq!(alexander_from_seifert(&seifert_matrix(&empty)), LaurentPolynomial::one());

        let hopf = BandRepresentation::new(2, alloc::vec![EmbeddedBand::positive(1, 2); 2]).unwrap();
        assert_eq!(seifert_matrix(&hopf).rows(), [alloc::vec![-1]]);

        let trefoil = BandRepresentation::new(2, alloc::vec![EmbeddedBand::positive(1, 2); 3]).unwrap();
        let v = seifert_matrix(&trefoil);
        let target = SeifertMatrix::from_rows(alloc::vec![alloc::vec![-1, 1], alloc::vec![0, -1]]).unwrap();
        assert!(is_congruent(&v, &target), "{v}");
        assert_eq!(alexander_from_seifert(&v), poly(&[1, -1, 1]));
    }

    fn is_congruent(a: &SeifertMatrix, b: &SeifertMatrix) -> bool {
        // brute force over 2×2 unimodular matrices with small entries
        let r = -2i64..=2;
        for p in r.clone() {
            for q in r.clone() {
                for s in r.clone() {
                    for u in r.clone() {
                        if (p * u - q * s).abs() == 1
                            && a.congruent(&[alloc::vec![p, q], alloc::vec![s, u]]) == *b
                        {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn seifert_from_matrix() {
        let v = SeifertMatrix::from_rows(alloc::vec![alloc::vec![-1]]).unwrap();
        assert!(alexander_from_seifert(&v).eq_up_to_units(&poly(&[-1, 1])));
        let v = SeifertMatrix::from_rows(alloc::vec![alloc::vec![-1, 1], alloc::vec![0, -1]]).unwrap();
        assert_eq!(alexander_from_seifert(&v), poly(&[1, -1, 1]));
        assert!(SeifertMatrix::from_rows(alloc::vec![alloc::vec![1, 2]]).is_err());
    }

    fn random_rep(rng: &mut ChaCha8Rng, n: usize, k: usize) -> BandRepresentation {
        let bands = (0..k)
            .map(|_| {
                let i = rng.gen_range(1..n);
                let j = rng.gen_range(i + 1..=n);
                EmbeddedBand::new(i, j, if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg })
            })
            .collect();
        BandRepresentation::new(n, bands).unwrap()
    }

    #[test]
    fn seifert_agrees_with_burau() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut checked = 0;
        while checked < 300 {
            let n = rng.gen_range(2..=4);
            let k = rng.gen_range(n - 1..=5);
            let rep = random_rep(&mut rng, n, k);
            let s = crate::surface::BraidedSurface::new(rep.clone());
            if !s.is_connected() {
                continue;
            }
            checked += 1;
            let v = seifert_matrix(&rep);
            assert_eq!(v.size(), k + 1 - n);
            let a = alexander_from_seifert(&v);
            let b = alexander_from_braid(&rep.beta()).unwrap();
            assert!(a.eq_up_to_units(&b), "{rep:?}: seifert {a}, burau {b}, V = {v}");
        }
    }
}
