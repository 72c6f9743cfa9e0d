use std::collections::HashMap;

use super::FiniteGroup;
use crate::budget;
use crate::error::{Error, Result};

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// `Z/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        FiniteGroup::from_fn(n, |a, b| (a + b) % n).with_name(format!("C{n}"))
    }

    /// Heisenberg group of upper unitriangular 3x3 matrices over `Z/p`;
    /// `(a, b, c)` has index `a*p^2 + b*p + c` and
    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    pub fn heisenberg(p: usize) -> Self {
        let n = p * p * p;
        let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
        FiniteGroup::from_fn(n, |x, y| {
            let (a, b, c) = split(x);
            let (a2, b2, c2) = split(y);
            ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
        })
        .with_name(format!("Heis{n}"))
    }

    /// Dihedral group of order `2m`: `r^k` is `k`, `s r^k` is `m + k`.
    pub fn dihedral(m: usize) -> Self {
        FiniteGroup::from_fn(2 * m, |x, y| {
            let (fx, kx) = (x / m, x % m);
            let (fy, ky) = (y / m, y % m);
            let k = if fy == 0 { (kx + ky) % m } else { (m - kx % m + ky) % m };
            ((fx + fy) % 2) * m + k
        })
        .with_name(format!("D{}", 2 * m))
    }

    /// Quaternion group: `i^k j^e` has index `e*4 + k` with `j i = i^3 j`,
    /// `j^2 = i^2`.
    pub fn quaternion() -> Self {
        FiniteGroup::from_fn(8, |x, y| {
            let (ex, kx) = (x / 4, x % 4);
            let (ey, ky) = (y / 4, y % 4);
            // i^kx j^ex i^ky j^ey = i^(kx ± ky) j^ex j^ey
            let k = if ex == 0 { kx + ky } else { kx + 4 - ky };
            let (k, e) = if ex == 1 && ey == 1 { (k + 2, 0) } else { (k, ex + ey) };
            e * 4 + k % 4
        })
        .with_name("Q8")
    }

    /// Closure of a set of permutations of `0..degree`, elements sorted
    /// lexicographically (identity first).
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        let bound = budget::current().max_order;
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::Input { detail: format!("permutation of length {} for degree {degree}", g.len()) });
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::Input { detail: format!("{g:?} is not a permutation") });
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for g in gens {
                let y: Vec<usize> = (0..degree).map(|i| g[x[i]]).collect();
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    budget::check("permutation group order", elems.len(), bound)?;
                }
            }
        }
        elems.sort();
        Ok(FiniteGroup::from_permutation_list(&elems))
    }

    /// Group of the given distinct permutations (closed under composition,
    /// identity first). Product `a*b` is `a ∘ b`.
    pub(crate) fn from_permutation_list(elems: &[Vec<usize>]) -> Self {
        let index: HashMap<&[usize], usize> = elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let n = elems.len();
        let degree = elems.first().map_or(0, |p| p.len());
        let mut table = vec![0u32; n * n];
        let mut buf = vec![0usize; degree];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                for k in 0..degree {
                    buf[k] = a[b[k]];
                }
                table[i * n + j] = index[buf.as_slice()] as u32;
            }
        }
        let inverses = (0..n).map(|i| (0..n).find(|&j| table[i * n + j] == 0).expect("closed")).collect();
        FiniteGroup::from_validated(n, table, inverses)
    }

    /// Permutations given as cycle lists, e.g. `[[0, 1], [2, 3, 4]]`.
    pub fn from_cycles(degree: usize, gens: &[Vec<Vec<usize>>]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|cycles| {
                let mut p: Vec<usize> = (0..degree).collect();
                for cycle in cycles {
                    for (k, &x) in cycle.iter().enumerate() {
                        let y = cycle[(k + 1) % cycle.len()];
                        if x >= degree || y >= degree {
                            return Err(Error::Input { detail: format!("point {x} outside degree {degree}") });
                        }
                        p[x] = y;
                    }
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_permutations(degree, &perms)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(cycle);
        }
        FiniteGroup::from_permutations(n, &gens).expect("small symmetric group").with_name(format!("S{n}"))
    }

    /// Parses names like `C3`, `S3`, `D8`, `Q8`, `Heis27`, `C2xC2xC3`.
    pub fn by_name(name: &str) -> Result<Self> {
        let parts: Vec<&str> = name.split(['x', '×']).collect();
        if parts.len() > 1 {
            let mut g = FiniteGroup::trivial();
            for p in parts {
                g = g.direct_product(&FiniteGroup::by_name(p.trim())?);
            }
            return Ok(g.with_name(name));
        }
        let bad = || Error::Input { detail: format!("unknown group name {name:?}") };
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let g = if name == "Q8" {
            FiniteGroup::quaternion()
        } else if let Some(rest) = name.strip_prefix("Heis") {
            let n = num(rest)?;
            let p = (2..=n).find(|p| p * p * p == n).ok_or_else(bad)?;
            FiniteGroup::heisenberg(p)
        } else if let Some(rest) = name.strip_prefix('C').or_else(|| name.strip_prefix('Z')) {
            let n = num(rest)?;
            if n == 0 {
                return Err(bad());
            }
            FiniteGroup::cyclic(n)
        } else if let Some(rest) = name.strip_prefix('S') {
            let n = num(rest)?;
            if !(1..=5).contains(&n) {
                return Err(bad());
            }
            FiniteGroup::symmetric(n)
        } else if let Some(rest) = name.strip_prefix('D') {
            let n = num(rest)?;
            if n < 2 || n % 2 != 0 {
                return Err(bad());
            }
            FiniteGroup::dihedral(n / 2)
        } else {
            return Err(bad());
        };
        Ok(g.with_name(name))
    }
}
