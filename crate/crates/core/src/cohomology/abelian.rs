use crate::error::{Error, Result};
use crate::group::{prime_factors, FiniteGroup};

/// A basis of a finite abelian group: `A = ⊕ <gens[i]>` with `gens[i]` of
/// order `orders[i]`, each a prime power, in decreasing order.
#[derive(Clone, Debug)]
pub(crate) struct AbelianBasis {
    pub gens: Vec<usize>,
    pub orders: Vec<usize>,
    /// Coordinates of every element.
    pub coords: Vec<Vec<usize>>,
    strides: Vec<usize>,
    by_code: Vec<usize>,
}

impl AbelianBasis {
    pub fn new(a: &FiniteGroup) -> Result<Self> {
        if let Some((x, y)) = a.first_noncommuting_pair() {
            return Err(Error::NotAbelian { a: x, b: y });
        }
        let mut wanted = Vec::new();
        for p in prime_factors(a.order()) {
            // counts[k] = #{x : order(x) divides p^k}
            let mut counts = vec![1usize];
            let mut pk = 1;
            loop {
                pk *= p;
                let c = a.elements().filter(|&x| pk % a.element_order(x) == 0).count();
                if c == *counts.last().expect("nonempty") {
                    break;
                }
                counts.push(c);
            }
            let log = |mut v: usize| {
                let mut e = 0;
                while v > 1 {
                    v /= p;
                    e += 1;
                }
                e
            };
            // at_least[k] = number of cyclic factors of order >= p^k (k >= 1)
            let at_least: Vec<usize> = (1..counts.len()).map(|k| log(counts[k] / counts[k - 1])).collect();
            for k in 1..=at_least.len() {
                let more = at_least.get(k).copied().unwrap_or(0);
                for _ in 0..(at_least[k - 1] - more) {
                    wanted.push(p.pow(k as u32));
                }
            }
        }
        wanted.sort_by(|x, y| y.cmp(x));
        let mut gens = Vec::new();
        let mut span = vec![false; a.order()];
        span[0] = true;
        if !pick(a, &wanted, &mut gens, &mut span) {
            unreachable!("finite abelian groups have a basis");
        }
        let r = gens.len();
        let mut strides = vec![1usize; r];
        for i in (0..r.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * wanted[i + 1];
        }
        let mut coords = vec![Vec::new(); a.order()];
        let mut by_code = vec![0usize; a.order()];
        for code in 0..a.order() {
            let c: Vec<usize> = (0..r).map(|i| (code / strides[i]) % wanted[i]).collect();
            let x = c.iter().zip(&gens).fold(0, |acc, (&ci, &g)| a.mul(acc, a.pow(g, ci as u64)));
            by_code[code] = x;
            coords[x] = c;
        }
        Ok(AbelianBasis { gens, orders: wanted, coords, strides, by_code })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Element with the given coordinates (reduced modulo the orders).
    pub fn element(&self, c: &[u64]) -> usize {
        let code: usize = c
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&v, &d), &s)| (v as usize % d) * s)
            .sum();
        self.by_code[code]
    }
}

fn pick(a: &FiniteGroup, wanted: &[usize], gens: &mut Vec<usize>, span: &mut Vec<bool>) -> bool {
    let depth = gens.len();
    if depth == wanted.len() {
        return true;
    }
    let d = wanted[depth];
    let size = span.iter().filter(|&&b| b).count();
    for x in a.elements() {
        if a.element_order(x) != d || span[x] {
            continue;
        }
        gens.push(x);
        let next = a.closure(gens);
        if next.iter().filter(|&&b| b).count() == size * d {
            let saved = std::mem::replace(span, next);
            if pick(a, wanted, gens, span) {
                return true;
            }
            *span = saved;
        }
        gens.pop();
    }
    false
}
