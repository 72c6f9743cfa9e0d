use std::collections::{BTreeSet, HashMap, VecDeque};

use super::abelian::AbelianBasis;
use super::GammaAction;
use crate::budget;
use crate::error::{Error, Result};
use crate::group::ops::CayleyTree;
use crate::linalg::kernel_mod;

/// A normalized 2-cocycle `ξ: Γ × Γ -> A` with values stored row-major,
/// `values[σ * |Γ| + τ] = ξ(σ, τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    ctx: GammaAction,
    values: Vec<usize>,
}

impl PartialOrd for Cocycle2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cocycle2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.values.cmp(&other.values)
    }
}

impl Cocycle2 {
    pub fn new(ctx: &GammaAction, values: Vec<usize>) -> Result<Self> {
        if let Some((a, b)) = ctx.target().first_noncommuting_pair() {
            return Err(Error::NotAbelian { a, b });
        }
        let n = ctx.gamma().order();
        if values.len() != n * n {
            return Err(Error::CocycleInvalid { detail: format!("{} values, expected {}", values.len(), n * n) });
        }
        for &v in &values {
            ctx.target().check_index(v)?;
        }
        if let Some(detail) = cocycle2_failure(ctx, &values) {
            return Err(Error::CocycleInvalid { detail });
        }
        Ok(Cocycle2 { ctx: ctx.clone(), values })
    }

    pub(crate) fn new_unchecked(ctx: &GammaAction, values: Vec<usize>) -> Self {
        debug_assert!(cocycle2_failure(ctx, &values).is_none());
        Cocycle2 { ctx: ctx.clone(), values }
    }

    pub fn zero(ctx: &GammaAction) -> Self {
        let n = ctx.gamma().order();
        Cocycle2 { ctx: ctx.clone(), values: vec![0; n * n] }
    }

    pub fn ctx(&self) -> &GammaAction {
        &self.ctx
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn at(&self, s: usize, t: usize) -> usize {
        self.values[s * self.ctx.gamma().order() + t]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cocycle2) -> Result<Cocycle2> {
        self.ctx.require_same(&other.ctx, "2-cocycles over different modules")?;
        let a = self.ctx.target();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| a.mul(x, y)).collect();
        Ok(Cocycle2 { ctx: self.ctx.clone(), values })
    }

    pub fn neg(&self) -> Cocycle2 {
        let a = self.ctx.target();
        Cocycle2 { ctx: self.ctx.clone(), values: self.values.iter().map(|&x| a.inv(x)).collect() }
    }

    /// Same values over another (equal-shaped) module; used after
    /// rebuilding an action.
    pub(crate) fn with_ctx(&self, ctx: &GammaAction) -> Cocycle2 {
        Cocycle2 { ctx: ctx.clone(), values: self.values.clone() }
    }
}

fn cocycle2_failure(ctx: &GammaAction, values: &[usize]) -> Option<String> {
    let (g, a) = (ctx.gamma(), ctx.target());
    let n = g.order();
    let xi = |s: usize, t: usize| values[s * n + t];
    for s in g.elements() {
        if xi(0, s) != 0 || xi(s, 0) != 0 {
            return Some(format!("not normalized at {s}"));
        }
    }
    for s in g.elements() {
        for t in g.elements() {
            let st = g.mul(s, t);
            for u in g.elements() {
                // σ ξ(τ,υ) + ξ(σ,τυ) = ξ(στ,υ) + ξ(σ,τ)
                let lhs = a.mul(ctx.act(s, xi(t, u)), xi(s, g.mul(t, u)));
                let rhs = a.mul(xi(st, u), xi(s, t));
                if lhs != rhs {
                    return Some(format!("cocycle law fails at ({s}, {t}, {u})"));
                }
            }
        }
    }
    None
}

/// `dh(σ, τ) = σ h_τ - h_{στ} + h_σ` for a 1-cochain `h` with `h_1 = 0`.
pub fn coboundary(ctx: &GammaAction, h: &[usize]) -> Cocycle2 {
    let (g, a) = (ctx.gamma(), ctx.target());
    let n = g.order();
    let mut values = vec![0; n * n];
    for s in g.elements() {
        for t in g.elements() {
            values[s * n + t] = a.mul(a.mul(ctx.act(s, h[t]), a.inv(h[g.mul(s, t)])), h[s]);
        }
    }
    Cocycle2 { ctx: ctx.clone(), values }
}

type EdgeVec = Vec<usize>;

/// Linear-algebra model of normalized 2-cocycles of an abelian module.
///
/// Every class has a representative vanishing on the edges of a spanning
/// tree of the Cayley graph of Γ; such a cocycle is determined by its
/// values on the remaining edges `(x, s_i)`. The coboundaries keeping the
/// tree condition come from 1-cochains determined by their values on the
/// generators.
#[derive(Clone, Debug)]
pub struct H2Context {
    ctx: GammaAction,
    tree: CayleyTree,
    edges: Vec<(usize, usize)>,
    edge_index: Vec<Option<usize>>,
    basis: AbelianBasis,
    /// Tree-normalized coboundaries, keyed by edge vector, with the
    /// generator values of a 1-cochain producing them.
    b_norm: HashMap<EdgeVec, Vec<usize>>,
    b_sorted: Vec<EdgeVec>,
}

impl H2Context {
    pub fn new(ctx: &GammaAction) -> Result<Self> {
        budget::check_gamma(ctx.gamma().order())?;
        budget::check_target(ctx.target().order())?;
        let basis = AbelianBasis::new(ctx.target())?;
        let g = ctx.gamma();
        let tree = CayleyTree::new(g);
        let edges = tree.non_tree_edges(g);
        let k = tree.gens.len();
        let mut edge_index = vec![None; g.order() * k];
        for (e, &(x, i)) in edges.iter().enumerate() {
            edge_index[x * k + i] = Some(e);
        }
        let mut h2 = H2Context {
            ctx: ctx.clone(),
            tree,
            edges,
            edge_index,
            basis,
            b_norm: HashMap::new(),
            b_sorted: Vec::new(),
        };
        h2.build_b_norm()?;
        Ok(h2)
    }

    pub fn ctx(&self) -> &GammaAction {
        &self.ctx
    }

    fn k(&self) -> usize {
        self.tree.gens.len()
    }

    fn edge_of(&self, x: usize, i: usize) -> Option<usize> {
        self.edge_index[x * self.k() + i]
    }

    fn add_edges(&self, u: &[usize], v: &[usize]) -> EdgeVec {
        let a = self.ctx.target();
        u.iter().zip(v).map(|(&x, &y)| a.mul(x, y)).collect()
    }

    /// Tree-consistent 1-cochain with `h_{s_i} = gen_values[i]`:
    /// `h_{p s} = p h_s + h_p` along tree edges.
    fn tree_cochain(&self, gen_values: &[usize]) -> Vec<usize> {
        let (g, a) = (self.ctx.gamma(), self.ctx.target());
        let mut h = vec![0; g.order()];
        for &z in self.tree.bfs.iter().skip(1) {
            let (p, i) = self.tree.parent[z].expect("non-root");
            h[z] = if p == 0 { gen_values[i] } else { a.mul(self.ctx.act(p, gen_values[i]), h[p]) };
        }
        h
    }

    fn coboundary_edges(&self, gen_values: &[usize]) -> EdgeVec {
        let h = self.tree_cochain(gen_values);
        let (g, a) = (self.ctx.gamma(), self.ctx.target());
        self.edges
            .iter()
            .map(|&(x, i)| {
                let s = self.tree.gens[i];
                a.mul(a.mul(self.ctx.act(x, h[s]), a.inv(h[g.mul(x, s)])), h[x])
            })
            .collect()
    }

    fn build_b_norm(&mut self) -> Result<()> {
        let k = self.k();
        let a = self.ctx.target().clone();
        // The map (h_{s_i}) -> edge vector is a homomorphism A^k -> A^N, so
        // its image is spanned by the images of basis vectors.
        let mut gen_inputs = Vec::new();
        for i in 0..k {
            for &b in &self.basis.gens {
                let mut v = vec![0; k];
                v[i] = b;
                gen_inputs.push(v);
            }
        }
        let gen_images: Vec<EdgeVec> = gen_inputs.iter().map(|v| self.coboundary_edges(v)).collect();
        let counter = budget::NodeCounter::new();
        let zero = vec![0; self.edges.len()];
        let mut map: HashMap<EdgeVec, Vec<usize>> = HashMap::from([(zero.clone(), vec![0; k])]);
        let mut queue = VecDeque::from([zero]);
        while let Some(v) = queue.pop_front() {
            counter.tick()?;
            let pre = map[&v].clone();
            for (inp, img) in gen_inputs.iter().zip(&gen_images) {
                let w = self.add_edges(&v, img);
                if !map.contains_key(&w) {
                    let p: Vec<usize> = pre.iter().zip(inp).map(|(&x, &y)| a.mul(x, y)).collect();
                    map.insert(w.clone(), p);
                    queue.push_back(w);
                }
            }
        }
        let mut sorted: Vec<EdgeVec> = map.keys().cloned().collect();
        sorted.sort();
        self.b_norm = map;
        self.b_sorted = sorted;
        Ok(())
    }

    /// The full cocycle with the given non-tree edge values and zero on the
    /// tree: `ξ(x, p s_i) = ξ(x, p) + ξ(x p, s_i)`.
    pub(crate) fn full_from_edges(&self, e: &[usize]) -> Vec<usize> {
        let (g, a) = (self.ctx.gamma(), self.ctx.target());
        let n = g.order();
        let mut f = vec![0; n * n];
        for x in g.elements() {
            for &z in self.tree.bfs.iter().skip(1) {
                let (p, i) = self.tree.parent[z].expect("non-root");
                let edge = self.edge_of(g.mul(x, p), i).map_or(0, |ei| e[ei]);
                f[x * n + z] = a.mul(f[x * n + p], edge);
            }
        }
        f
    }

    /// Splits `ξ = ξ' + dh` with `ξ'` vanishing on tree edges; returns the
    /// non-tree edge values of `ξ'` and `h`.
    pub(crate) fn normalize(&self, xi: &Cocycle2) -> (EdgeVec, Vec<usize>) {
        let (g, a) = (self.ctx.gamma(), self.ctx.target());
        let mut h = vec![0; g.order()];
        for &z in self.tree.bfs.iter().skip(1) {
            let (p, i) = self.tree.parent[z].expect("non-root");
            if p != 0 {
                // h_z = p h_s + h_p - ξ(p, s) with h_s = 0 on generators.
                let s = self.tree.gens[i];
                h[z] = a.mul(a.mul(self.ctx.act(p, h[s]), h[p]), a.inv(xi.at(p, s)));
            }
        }
        let d = coboundary(&self.ctx, &h);
        let edges = self
            .edges
            .iter()
            .map(|&(x, i)| {
                let s = self.tree.gens[i];
                a.mul(xi.at(x, s), a.inv(d.at(x, s)))
            })
            .collect();
        (edges, h)
    }

    /// `Some(h)` with `dh = ξ`, else `None`.
    pub fn coboundary_witness(&self, xi: &Cocycle2) -> Result<Option<Vec<usize>>> {
        xi.ctx.require_same(&self.ctx, "2-cocycle over a different module")?;
        let (e, h0) = self.normalize(xi);
        let Some(gen_values) = self.b_norm.get(&e) else { return Ok(None) };
        let h1 = self.tree_cochain(gen_values);
        let a = self.ctx.target();
        Ok(Some(h0.iter().zip(&h1).map(|(&x, &y)| a.mul(x, y)).collect()))
    }

    pub fn is_coboundary(&self, xi: &Cocycle2) -> Result<bool> {
        Ok(self.coboundary_witness(xi)?.is_some())
    }

    fn canonical_edges(&self, e: &[usize]) -> Vec<usize> {
        self.b_sorted
            .iter()
            .map(|b| self.full_from_edges(&self.add_edges(e, b)))
            .min()
            .expect("zero coboundary present")
    }

    /// Lexicographically least cocycle among the tree-normalized members of
    /// the class of `ξ`.
    pub fn canonical(&self, xi: &Cocycle2) -> Result<Cocycle2> {
        xi.ctx.require_same(&self.ctx, "2-cocycle over a different module")?;
        let (e, _) = self.normalize(xi);
        Ok(Cocycle2 { ctx: self.ctx.clone(), values: self.canonical_edges(&e) })
    }

    pub fn same_class(&self, x: &Cocycle2, y: &Cocycle2) -> Result<bool> {
        self.is_coboundary(&x.add(&y.neg())?)
    }

    /// Tree-normalized cocycles, as edge vectors.
    fn z_norm(&self) -> Result<Vec<EdgeVec>> {
        let g = self.ctx.gamma();
        let r = self.basis.rank();
        let nedges = self.edges.len();
        if r == 0 || nedges == 0 {
            return Ok(vec![vec![0; nedges]]);
        }
        let n = self.basis.orders.iter().fold(1usize, |acc, &d| crate::group::lcm(acc, d)) as u64;
        let cols = nedges * r;
        // Module action in coordinates: m[σ][i][j] = coord_i(σ(b_j)).
        let mats: Vec<Vec<Vec<u64>>> = g
            .elements()
            .map(|s| {
                (0..r)
                    .map(|i| (0..r).map(|j| self.basis.coords[self.ctx.act(s, self.basis.gens[j])][i] as u64).collect())
                    .collect()
            })
            .collect();
        let scale: Vec<u64> = self.basis.orders.iter().map(|&d| n / d as u64).collect();
        let k = self.k();
        let mut rows: BTreeSet<Vec<u64>> = BTreeSet::new();
        // Linear forms: form[j][c] is the coefficient of unknown c in
        // coordinate j.
        let zero_form = || vec![vec![0u64; cols]; r];
        let add_edge = |form: &mut Vec<Vec<u64>>, e: usize, m: Option<&Vec<Vec<u64>>>, sign: u64| {
            for jp in 0..r {
                for j in 0..r {
                    let c = match m {
                        Some(m) => m[jp][j],
                        None => u64::from(jp == j),
                    };
                    let cell = &mut form[jp][e * r + j];
                    *cell = (*cell + c * sign) % n;
                }
            }
        };
        let nbr = |x: u64| (n - x % n) % n;
        for x in g.elements().skip(1) {
            let mut f: Vec<Vec<Vec<u64>>> = vec![zero_form(); g.order()];
            for &z in self.tree.bfs.iter().skip(1) {
                let (p, i) = self.tree.parent[z].expect("non-root");
                let mut form = f[p].clone();
                if let Some(e) = self.edge_of(g.mul(x, p), i) {
                    add_edge(&mut form, e, None, 1);
                }
                f[z] = form;
            }
            for y in g.elements() {
                for i in 0..k {
                    let ys = g.mul(y, self.tree.gens[i]);
                    let mut form = f[ys].clone();
                    for (frow, srow) in form.iter_mut().zip(&f[y]) {
                        for (c, &v) in frow.iter_mut().zip(srow) {
                            *c = (*c + nbr(v)) % n;
                        }
                    }
                    if let Some(e) = self.edge_of(g.mul(x, y), i) {
                        add_edge(&mut form, e, None, n - 1);
                    }
                    if let Some(e) = self.edge_of(y, i) {
                        add_edge(&mut form, e, Some(&mats[x]), 1);
                    }
                    for (jp, row) in form.into_iter().enumerate() {
                        let row: Vec<u64> = row.into_iter().map(|c| c * scale[jp] % n).collect();
                        if row.iter().any(|&c| c != 0) {
                            rows.insert(row);
                        }
                    }
                }
            }
        }
        let matrix: Vec<Vec<u64>> = rows.into_iter().collect();
        let kernel = kernel_mod(&matrix, cols, n);
        let to_edges = |v: &[u64]| -> EdgeVec { (0..nedges).map(|e| self.basis.element(&v[e * r..(e + 1) * r])).collect() };
        let gens: Vec<EdgeVec> = kernel.iter().map(|v| to_edges(v)).collect();
        let counter = budget::NodeCounter::new();
        let zero = vec![0; nedges];
        let mut seen: BTreeSet<EdgeVec> = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(v) = queue.pop_front() {
            counter.tick()?;
            for gv in &gens {
                let w = self.add_edges(&v, gv);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// All classes of `H^2(Γ, A)`, canonical representatives in increasing
    /// order.
    pub fn enumerate(&self) -> Result<Vec<Cocycle2>> {
        let z = self.z_norm()?;
        let mut done: std::collections::HashSet<EdgeVec> = std::collections::HashSet::new();
        let mut reps = Vec::new();
        for e in &z {
            if done.contains(e) {
                continue;
            }
            for b in &self.b_sorted {
                done.insert(self.add_edges(e, b));
            }
            reps.push(self.canonical_edges(e));
        }
        reps.sort();
        Ok(reps.into_iter().map(|values| Cocycle2::new_unchecked(&self.ctx, values)).collect())
    }

    /// `|H^2(Γ, A)|` without building representatives.
    pub fn count(&self) -> Result<usize> {
        Ok(self.z_norm()?.len() / self.b_sorted.len())
    }
}

/// `H^2(Γ, A)` for an abelian Γ-module.
pub fn h2_abelian_enumerate(ctx: &GammaAction) -> Result<Vec<Cocycle2>> {
    H2Context::new(ctx)?.enumerate()
}
