//! Permutations of `{0..n-1}` internally, `{1..n}` in every external format.
//!
//! Composition is left-to-right: `p.then(q)` maps `i` to `q(p(i))`, so that
//! `H^g = g⁻¹Hg` reads naturally.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Box<[u32]>,
}

/// Cycle statistics of a single permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleInfo {
    pub support: usize,
    /// All cycle lengths, fixed points included, in non-increasing order.
    pub cycle_type: Vec<usize>,
    pub order: BigUint,
    pub even: bool,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            img: (0..n as u32).collect(),
        }
    }

    /// From a 0-based image array; validates bijectivity.
    pub fn from_images(img: Vec<u32>) -> Result<Perm, Error> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation);
            }
            seen[x] = true;
        }
        Ok(Perm {
            img: img.into_boxed_slice(),
        })
    }

    /// Trusted constructor for hot paths; bijectivity is only debug-checked.
    pub(crate) fn from_vec_unchecked(img: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(img.clone()).is_ok());
        Perm {
            img: img.into_boxed_slice(),
        }
    }

    /// From 1-based images, as written in external formats.
    pub fn from_images_1based(img: &[usize]) -> Result<Perm, Error> {
        let v: Result<Vec<u32>, Error> = img
            .iter()
            .map(|&x| {
                if x == 0 {
                    Err(Error::NotAPermutation)
                } else {
                    Ok((x - 1) as u32)
                }
            })
            .collect();
        Perm::from_images(v?)
    }

    /// Build from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm, Error> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let a = a as usize;
                if a >= n {
                    return Err(Error::PointOutOfRange {
                        point: a + 1,
                        degree: n,
                    });
                }
                if used[a] {
                    return Err(Error::NotAPermutation);
                }
                used[a] = true;
                img[a] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    /// Transposition of two 0-based points.
    pub fn transposition(n: usize, a: u32, b: u32) -> Perm {
        let mut img: Vec<u32> = (0..n as u32).collect();
        img.swap(a as usize, b as usize);
        Perm {
            img: img.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.img
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn at(&self, i: u32) -> u32 {
        self.img[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `q`; panics on degree mismatch (internal use).
    #[inline]
    pub fn then(&self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Perm {
            img: self.img.iter().map(|&x| q.img[x as usize]).collect(),
        }
    }

    /// Checked composition: `i ↦ q(p(i))`.
    pub fn compose(&self, q: &Perm) -> Result<Perm, Error> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.then(q))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            img: inv.into_boxed_slice(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        assert_eq!(self.degree(), g.degree(), "degree mismatch");
        let mut out = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            out[g.img[i] as usize] = g.img[self.img[i] as usize];
        }
        Perm {
            img: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycles (0-based) of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.img[s] as usize == s {
                continue;
            }
            let mut c = vec![s as u32];
            seen[s] = true;
            let mut x = self.img[s] as usize;
            while x != s {
                seen[x] = true;
                c.push(x as u32);
                x = self.img[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn support(&self) -> usize {
        self.img
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .count()
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.img
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn analyze(&self) -> CycleInfo {
        let cyc = self.cycles();
        let moved: usize = cyc.iter().map(Vec::len).sum();
        let mut cycle_type: Vec<usize> = cyc.iter().map(Vec::len).collect();
        cycle_type.extend(std::iter::repeat_n(1, self.degree() - moved));
        cycle_type.sort_unstable_by(|a, b| b.cmp(a));
        let mut order = BigUint::one();
        for c in &cyc {
            order = order.lcm(&BigUint::from(c.len()));
        }
        let transpositions: usize = cyc.iter().map(|c| c.len() - 1).sum();
        CycleInfo {
            support: moved,
            cycle_type,
            order,
            even: transpositions.is_multiple_of(2),
        }
    }

    /// Element order as a machine integer (saturates; fine for the degrees used here).
    pub fn order_u64(&self) -> u64 {
        let mut o: u64 = 1;
        for c in self.cycles() {
            o = o.lcm(&(c.len() as u64));
        }
        o
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parse cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Perm, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = s.as_bytes();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        let bad = |col: usize, msg: &str| Error::Parse {
            line: 0,
            col: col + 1,
            msg: msg.to_string(),
        };
        while i < bytes.len() {
            if bytes[i] != b'(' {
                return Err(bad(i, "expected '('"));
            }
            i += 1;
            let mut cyc = Vec::new();
            loop {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i > start {
                    let v: usize = s[start..i].parse().map_err(|_| bad(start, "bad number"))?;
                    if v == 0 || v > degree {
                        return Err(Error::PointOutOfRange { point: v, degree });
                    }
                    cyc.push((v - 1) as u32);
                }
                match bytes.get(i) {
                    Some(b',') if i > start => i += 1,
                    Some(b')') => {
                        i += 1;
                        break;
                    }
                    Some(_) => return Err(bad(i, "expected ',' or ')'")),
                    None => return Err(bad(i, "unterminated cycle")),
                }
            }
            if cyc.len() > 1 {
                cycles.push(cyc);
            }
        }
        Perm::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc = self.cycles();
        if cyc.is_empty() {
            return write!(f, "()");
        }
        for c in cyc {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

/// Free-standing forms matching the operation names.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm, Error> {
    p.compose(q)
}

pub fn inverse(p: &Perm) -> Perm {
    p.inverse()
}

pub fn analyze(p: &Perm) -> CycleInfo {
    p.analyze()
}
