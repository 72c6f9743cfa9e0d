//! Γ-liens, extension classes as Springer pairs, and the action of
//! `H^2(Γ, Z)` on them.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::budget;
use crate::cohomology::{
    cocycles, AbelianKernel, Cocycle2, GammaAction, H2Context,
};
use crate::error::{Error, Result};
use crate::group::ops::{extend_along_generators, CayleyTree};
use crate::group::{automorphisms, AutGroupData, FiniteGroup, GroupHom, Subgroup};

/// A homomorphism `κ: Γ -> Out(G)` with a chosen set-theoretic lift to
/// `Aut(G)` (least automorphism index in each outer class).
#[derive(Clone, Debug)]
pub struct Lien {
    gamma: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    aut: Arc<AutGroupData>,
    kappa: GroupHom,
    lift: Vec<usize>,
    center: Subgroup,
    center_module: GammaAction,
}

impl PartialEq for Lien {
    fn eq(&self, other: &Self) -> bool {
        self.gamma == other.gamma && self.g == other.g && self.kappa == other.kappa
    }
}

impl Eq for Lien {}

impl Lien {
    pub fn new(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, kappa: Vec<usize>) -> Result<Self> {
        let aut = Arc::new(automorphisms(&g)?);
        Lien::with_aut(gamma, g, aut, kappa)
    }

    pub fn with_aut(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>, aut: Arc<AutGroupData>, kappa: Vec<usize>) -> Result<Self> {
        let kappa = GroupHom::new(&gamma, &aut.out, kappa)
            .map_err(|e| Error::LienInvalid { detail: format!("kappa: {e}") })?;
        let lift: Vec<usize> = gamma.elements().map(|s| aut.least_lift(kappa.apply(s)).expect("surjective")).collect();
        let center = g.center();
        let zg = Arc::new(center.as_group(&g));
        let perms = gamma
            .elements()
            .map(|s| center.elements().iter().map(|&z| center.position(aut.apply(lift[s], z)).expect("characteristic")).collect())
            .collect();
        let center_module = GammaAction::new_unchecked(gamma.clone(), zg, perms);
        Ok(Lien { gamma, g, aut, kappa, lift, center, center_module })
    }

    /// The lien of a Γ-group: `κ = π ∘ action`.
    pub fn from_action(ctx: &GammaAction) -> Result<Self> {
        let aut = Arc::new(automorphisms(ctx.target())?);
        let kappa = ctx
            .perms()
            .iter()
            .map(|p| aut.out_projection.apply(aut.index_of(p).expect("automorphism")))
            .collect();
        Lien::with_aut(ctx.gamma().clone(), ctx.target().clone(), aut, kappa)
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn aut(&self) -> &AutGroupData {
        &self.aut
    }

    pub fn kappa(&self) -> &GroupHom {
        &self.kappa
    }

    /// Chosen automorphism over `κ(σ)`.
    pub fn lift_phi(&self, s: usize) -> usize {
        self.lift[s]
    }

    pub fn center(&self) -> &Subgroup {
        &self.center
    }

    /// The action on the center induced by `κ`.
    pub fn center_module(&self) -> &GammaAction {
        &self.center_module
    }

    fn require_same(&self, other: &Lien) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LienMismatch { detail: "extension classes over different liens".into() })
        }
    }

    /// The Γ-group given by a homomorphism `Γ -> Aut(G)` of automorphism
    /// indices.
    pub fn action_of(&self, phi: &[usize]) -> GammaAction {
        let perms = phi.iter().map(|&a| self.aut.perms[a].clone()).collect();
        GammaAction::new_unchecked(self.gamma.clone(), self.g.clone(), perms)
    }

    /// First homomorphism `Γ -> Aut(G)` over `κ`, if any.
    pub fn split_hom(&self) -> Result<Option<Vec<usize>>> {
        let mut first = None;
        self.visit_split_homs(&mut |phi| {
            first = Some(phi);
            ControlFlow::Break(())
        })?;
        Ok(first)
    }

    /// All homomorphisms `Γ -> Aut(G)` over `κ`, in search order.
    pub fn split_homs(&self) -> Result<Vec<Vec<usize>>> {
        let mut all = Vec::new();
        self.visit_split_homs(&mut |phi| {
            all.push(phi);
            ControlFlow::Continue(())
        })?;
        Ok(all)
    }

    fn visit_split_homs(&self, f: &mut dyn FnMut(Vec<usize>) -> ControlFlow<()>) -> Result<()> {
        let gens = self.gamma.generators().to_vec();
        let cands: Vec<Vec<usize>> = gens
            .iter()
            .map(|&s| {
                let o = self.kappa.apply(s);
                (0..self.aut.aut.order()).filter(|&a| self.aut.out_projection.apply(a) == o).collect()
            })
            .collect();
        let counter = budget::NodeCounter::new();
        let mut images = Vec::new();
        let _ = self.split_search(&gens, &cands, &mut images, &counter, f)?;
        Ok(())
    }

    fn split_search(
        &self,
        gens: &[usize],
        cands: &[Vec<usize>],
        images: &mut Vec<usize>,
        counter: &budget::NodeCounter,
        f: &mut dyn FnMut(Vec<usize>) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        counter.tick()?;
        let depth = images.len();
        let aut = &self.aut.aut;
        let Some(values) = extend_along_generators(&self.gamma, &gens[..depth], 0usize, |_, v, i| aut.mul(v, images[i]))
        else {
            return Ok(ControlFlow::Continue(()));
        };
        if depth == gens.len() {
            return Ok(f(values.into_iter().map(|v| v.expect("spanned")).collect()));
        }
        for &a in &cands[depth] {
            images.push(a);
            let r = self.split_search(gens, cands, images, counter, f)?;
            images.pop();
            if r.is_break() {
                return Ok(r);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// The lien restricted to a subgroup of Γ, re-indexed by position.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Lien> {
        if sub.parent_order() != self.gamma.order() {
            return Err(Error::NotSubgroup { detail: "not a subgroup of gamma".into() });
        }
        let gv = Arc::new(sub.as_group(&self.gamma));
        let kappa = sub.elements().iter().map(|&s| self.kappa.apply(s)).collect();
        Lien::with_aut(gv, self.g.clone(), self.aut.clone(), kappa)
    }
}

/// A Springer pair `(φ, g)` over a lien:
/// `φ_σ φ_τ = inn(g_{σ,τ}) φ_{στ}` and
/// `g_{σ,τ} g_{στ,υ} = φ_σ(g_{τ,υ}) g_{σ,τυ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCocycle {
    lien: Arc<Lien>,
    phi: Vec<usize>,
    gvals: Vec<usize>,
}

impl ExtensionCocycle {
    pub fn new(lien: &Arc<Lien>, phi: Vec<usize>, gvals: Vec<usize>) -> Result<Self> {
        if let Some(detail) = pair_failure(lien, &phi, &gvals) {
            return Err(Error::CocycleInvalid { detail });
        }
        Ok(ExtensionCocycle { lien: lien.clone(), phi, gvals })
    }

    fn new_unchecked(lien: &Arc<Lien>, phi: Vec<usize>, gvals: Vec<usize>) -> Self {
        debug_assert_eq!(pair_failure(lien, &phi, &gvals), None);
        ExtensionCocycle { lien: lien.clone(), phi, gvals }
    }

    /// The split class `(φ, 1)` of a homomorphism `φ` over `κ`.
    pub fn split(lien: &Arc<Lien>, phi: Vec<usize>) -> Result<Self> {
        let n = lien.gamma.order();
        ExtensionCocycle::new(lien, phi, vec![0; n * n])
    }

    pub fn lien(&self) -> &Arc<Lien> {
        &self.lien
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn gvals(&self) -> &[usize] {
        &self.gvals
    }

    #[inline]
    pub fn g_at(&self, s: usize, t: usize) -> usize {
        self.gvals[s * self.lien.gamma.order() + t]
    }

    /// The equivalent pair under `h`: `φ'_σ = inn(h_σ) φ_σ`,
    /// `g'_{σ,τ} = h_σ φ_σ(h_τ) g_{σ,τ} h_{στ}^-1`.
    pub fn transform(&self, h: &[usize]) -> ExtensionCocycle {
        let (gm, g, aut) = (&self.lien.gamma, &self.lien.g, &self.lien.aut);
        let n = gm.order();
        let phi: Vec<usize> = gm.elements().map(|s| aut.aut.mul(aut.conjugation[h[s]], self.phi[s])).collect();
        let mut gvals = vec![0; n * n];
        for s in gm.elements() {
            for t in gm.elements() {
                let v = g.mul(g.mul(h[s], aut.apply(self.phi[s], h[t])), self.g_at(s, t));
                gvals[s * n + t] = g.mul(v, g.inv(h[gm.mul(s, t)]));
            }
        }
        ExtensionCocycle::new_unchecked(&self.lien, phi, gvals)
    }

    /// Restriction to a subgroup, over `lien.restrict(sub)`.
    pub fn restrict(&self, sub: &Subgroup, restricted: &Arc<Lien>) -> Result<ExtensionCocycle> {
        let e = sub.elements();
        let phi = e.iter().map(|&s| self.phi[s]).collect();
        let gvals = e.iter().flat_map(|&s| e.iter().map(move |&t| (s, t))).map(|(s, t)| self.g_at(s, t)).collect();
        ExtensionCocycle::new(restricted, phi, gvals)
    }

    /// The `h` bringing `φ` to the chosen lift pointwise.
    fn to_lift(&self) -> Vec<usize> {
        let aut = &self.lien.aut;
        self.lien
            .gamma
            .elements()
            .map(|s| {
                let a = aut.aut.mul(self.lien.lift[s], aut.aut.inv(self.phi[s]));
                aut.inner_witness(a).expect("same outer class")
            })
            .collect()
    }

    /// `(φ, ξ g)` for a `Z`-valued 2-cocycle over the center module.
    pub fn act_by(&self, xi: &Cocycle2) -> Result<ExtensionCocycle> {
        if xi.ctx() != &self.lien.center_module {
            return Err(Error::LienMismatch { detail: "2-cocycle is not over the center module".into() });
        }
        let (g, z) = (&self.lien.g, &self.lien.center);
        let gvals = self.gvals.iter().zip(xi.values()).map(|(&v, &c)| g.mul(z.elements()[c], v)).collect();
        Ok(ExtensionCocycle::new_unchecked(&self.lien, self.phi.clone(), gvals))
    }

    /// The extension group `E`: element `σ |G| + x` is `x u_σ`, with
    /// `(x u_σ)(y u_τ) = x φ_σ(y) g_{σ,τ} u_{στ}`. Returns `E`, the inclusion
    /// of `G` and the projection onto Γ.
    pub fn extension_group(&self) -> (FiniteGroup, Vec<usize>, GroupHom) {
        let (gm, g, aut) = (&self.lien.gamma, &self.lien.g, &self.lien.aut);
        let m = g.order();
        let e = FiniteGroup::from_fn(gm.order() * m, |a, b| {
            let (s, x) = (a / m, a % m);
            let (t, y) = (b / m, b % m);
            let v = g.mul(g.mul(x, aut.apply(self.phi[s], y)), self.g_at(s, t));
            gm.mul(s, t) * m + v
        });
        let incl = (0..m).collect();
        let proj = GroupHom::from_images_unchecked((0..gm.order() * m).map(|a| a / m).collect());
        (e, incl, proj)
    }

    /// The pair of an explicit extension `1 -> G -> E -> Γ -> 1` using the
    /// least-index section.
    pub fn from_extension(lien: &Arc<Lien>, e: &FiniteGroup, incl: &[usize], proj: &GroupHom) -> Result<Self> {
        let (gm, g, aut) = (&lien.gamma, &lien.g, &lien.aut);
        if incl.len() != g.order() || !proj.is_surjective(gm) {
            return Err(Error::Input { detail: "not an extension of gamma by G".into() });
        }
        let mut back = vec![usize::MAX; e.order()];
        for (x, &y) in incl.iter().enumerate() {
            back[y] = x;
        }
        let u: Vec<usize> = gm.elements().map(|s| proj.least_preimage(s).expect("surjective")).collect();
        let phi = gm
            .elements()
            .map(|s| {
                let perm: Vec<usize> = incl.iter().map(|&y| back[e.conj(u[s], y)]).collect();
                aut.index_of(&perm).ok_or_else(|| Error::Input { detail: "G is not normal in E".into() })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = gm.order();
        let mut gvals = vec![0; n * n];
        for s in gm.elements() {
            for t in gm.elements() {
                let v = e.mul(e.mul(u[s], u[t]), e.inv(u[gm.mul(s, t)]));
                gvals[s * n + t] = back[v];
            }
        }
        ExtensionCocycle::new(lien, phi, gvals)
    }
}

fn pair_failure(lien: &Lien, phi: &[usize], gvals: &[usize]) -> Option<String> {
    let (gm, g, aut) = (&lien.gamma, &lien.g, &lien.aut);
    let n = gm.order();
    if phi.len() != n || gvals.len() != n * n {
        return Some("wrong array lengths".into());
    }
    if phi.iter().any(|&a| a >= aut.aut.order()) || gvals.iter().any(|&v| v >= g.order()) {
        return Some("index out of range".into());
    }
    if phi[0] != 0 {
        return Some("phi(1) is not the identity".into());
    }
    for s in gm.elements() {
        if aut.out_projection.apply(phi[s]) != lien.kappa.apply(s) {
            return Some(format!("phi({s}) is not over kappa({s})"));
        }
        if gvals[s] != 0 || gvals[s * n] != 0 {
            return Some(format!("g is not normalized at {s}"));
        }
    }
    let at = |s: usize, t: usize| gvals[s * n + t];
    for s in gm.elements() {
        for t in gm.elements() {
            let st = gm.mul(s, t);
            if aut.aut.mul(phi[s], phi[t]) != aut.aut.mul(aut.conjugation[at(s, t)], phi[st]) {
                return Some(format!("phi(s)phi(t) != inn(g) phi(st) at ({s}, {t})"));
            }
            for u in gm.elements() {
                let lhs = g.mul(at(s, t), at(st, u));
                let rhs = g.mul(aut.apply(phi[s], at(t, u)), at(s, gm.mul(t, u)));
                if lhs != rhs {
                    return Some(format!("g fails the cocycle law at ({s}, {t}, {u})"));
                }
            }
        }
    }
    None
}

/// `H^2(Γ, L)` machinery for one lien: a base class normalized to the
/// chosen lift, and `H^2(Γ, Z)` acting on it.
#[derive(Clone, Debug)]
pub struct LienContext {
    lien: Arc<Lien>,
    z: H2Context,
    base: Option<ExtensionCocycle>,
}

impl LienContext {
    pub fn new(lien: &Arc<Lien>) -> Result<Self> {
        budget::check_gamma(lien.gamma.order())?;
        let z = H2Context::new(&lien.center_module)?;
        let base = find_base(lien)?.map(|e| e.transform(&e.to_lift()));
        Ok(LienContext { lien: lien.clone(), z, base })
    }

    pub fn lien(&self) -> &Arc<Lien> {
        &self.lien
    }

    pub fn center_h2(&self) -> &H2Context {
        &self.z
    }

    /// `Some(e)` when `H^2(Γ, L)` is nonempty.
    pub fn base(&self) -> Option<&ExtensionCocycle> {
        self.base.as_ref()
    }

    /// `(ξ, h1, h2)` with `ξ · transform(e1, h1) = transform(e2, h2)`, both
    /// transforms having `φ` equal to the lift.
    pub fn difference_raw(&self, e1: &ExtensionCocycle, e2: &ExtensionCocycle) -> Result<(Cocycle2, Vec<usize>, Vec<usize>)> {
        self.lien.require_same(&e1.lien)?;
        self.lien.require_same(&e2.lien)?;
        let (h1, h2) = (e1.to_lift(), e2.to_lift());
        let (a, b) = (e1.transform(&h1), e2.transform(&h2));
        let (g, z) = (&self.lien.g, &self.lien.center);
        let values = a
            .gvals
            .iter()
            .zip(&b.gvals)
            .map(|(&x, &y)| {
                z.position(g.mul(y, g.inv(x)))
                    .ok_or_else(|| Error::NotComparable { detail: "difference is not central".into() })
            })
            .collect::<Result<Vec<_>>>()?;
        let xi = Cocycle2::new(&self.lien.center_module, values)
            .map_err(|e| Error::NotComparable { detail: e.to_string() })?;
        Ok((xi, h1, h2))
    }

    /// The class `ξ` with `ξ · e1 ~ e2`, canonical.
    pub fn difference_class(&self, e1: &ExtensionCocycle, e2: &ExtensionCocycle) -> Result<Cocycle2> {
        let (xi, _, _) = self.difference_raw(e1, e2)?;
        self.z.canonical(&xi)
    }

    pub fn are_equivalent(&self, e1: &ExtensionCocycle, e2: &ExtensionCocycle) -> Result<bool> {
        let (xi, _, _) = self.difference_raw(e1, e2)?;
        self.z.is_coboundary(&xi)
    }

    /// Canonical representative: `φ` equal to the lift and `g` equal to the
    /// base times the canonical difference.
    pub fn canonical(&self, e: &ExtensionCocycle) -> Result<ExtensionCocycle> {
        let base = self.base.as_ref().expect("a class exists, so the base search succeeded");
        let d = self.difference_class(base, e)?;
        base.act_by(&d)
    }

    /// All classes, sorted by their `g` arrays.
    pub fn enumerate(&self) -> Result<Vec<ExtensionCocycle>> {
        let Some(base) = &self.base else { return Ok(Vec::new()) };
        let mut out = self.z.enumerate()?.iter().map(|xi| base.act_by(xi)).collect::<Result<Vec<_>>>()?;
        out.sort_by(|a, b| (&a.phi, &a.gvals).cmp(&(&b.phi, &b.gvals)));
        Ok(out)
    }

    /// Whether `−[ξ]` lies in the image of `δ: H^1(Γ, G_0/Z) -> H^2(Γ, Z)`,
    /// where `G_0` is `G` with the action of a splitting of `e0`. By the
    /// sign conventions of [`ExtensionCocycle::act_by`] and the obstruction
    /// `b_σ σ(b_τ) b_{στ}^-1`, this is exactly neutrality of `ξ · e0`.
    pub fn neutral_via_delta(&self, e0: &ExtensionCocycle, xi: &Cocycle2) -> Result<bool> {
        let Some(w) = is_neutral(e0)? else { return Err(Error::NotNeutralBase) };
        if xi.ctx() != &self.lien.center_module {
            return Err(Error::LienMismatch { detail: "2-cocycle is not over the center module".into() });
        }
        let g0 = self.lien.action_of(&w.phi);
        let kernel = AbelianKernel::new(&g0, &self.lien.center)?;
        let target = self.z.canonical(&xi.neg())?;
        for psi in cocycles(kernel.h_ctx())? {
            let ob = crate::cohomology::delta_central(&kernel, &psi)?;
            let c = self.z.canonical(&ob.cocycle.with_ctx(&self.lien.center_module))?;
            if c == target {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A neutral witness: `transform(e, h) = (phi, 1)` with `phi` a
/// homomorphism `Γ -> Aut(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeutralWitness {
    pub h: Vec<usize>,
    pub phi: Vec<usize>,
}

/// Searches `h` on generators with `σ -> h_σ u_σ` a homomorphism section.
pub fn is_neutral(e: &ExtensionCocycle) -> Result<Option<NeutralWitness>> {
    let gm = e.lien.gamma.clone();
    let gens = gm.generators().to_vec();
    let counter = budget::NodeCounter::new();
    let mut images = Vec::new();
    let Some(h) = neutral_search(e, &gens, &mut images, &counter)? else { return Ok(None) };
    let t = e.transform(&h);
    debug_assert!(t.gvals.iter().all(|&v| v == 0));
    Ok(Some(NeutralWitness { h, phi: t.phi }))
}

fn neutral_search(
    e: &ExtensionCocycle,
    gens: &[usize],
    images: &mut Vec<usize>,
    counter: &budget::NodeCounter,
) -> Result<Option<Vec<usize>>> {
    counter.tick()?;
    let (gm, g, aut) = (&e.lien.gamma, &e.lien.g, &e.lien.aut);
    let depth = images.len();
    // h_{xs} = h_x φ_x(h_s) g(x, s)
    let Some(values) = extend_along_generators(gm, &gens[..depth], 0usize, |x, hx, i| {
        g.mul(g.mul(hx, aut.apply(e.phi[x], images[i])), e.g_at(x, gens[i]))
    }) else {
        return Ok(None);
    };
    if depth == gens.len() {
        return Ok(Some(values.into_iter().map(|v| v.expect("spanned")).collect()));
    }
    for y in g.elements() {
        images.push(y);
        let r = neutral_search(e, gens, images, counter)?;
        images.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

/// Some class of `H^2(Γ, L)`: a split one when `κ` lifts to a
/// homomorphism, otherwise a search over pairs with `φ` the lift.
fn find_base(lien: &Arc<Lien>) -> Result<Option<ExtensionCocycle>> {
    if let Some(phi) = lien.split_hom()? {
        return Ok(Some(ExtensionCocycle::split(lien, phi)?));
    }
    search_base(lien)
}

/// Exhaustive search for a pair with `φ` equal to the lift, tree edges fixed
/// and the remaining edge values ranging over cosets of the center.
pub(crate) fn search_base(lien: &Arc<Lien>) -> Result<Option<ExtensionCocycle>> {
    let (gm, g, aut) = (&lien.gamma, &lien.g, &lien.aut);
    let n = gm.order();
    // With φ = lift, g_{σ,τ} lies in c_{σ,τ} Z.
    let c: Vec<usize> = (0..n * n)
        .map(|st| {
            let (s, t) = (st / n, st % n);
            let a = aut.aut.mul(aut.aut.mul(lien.lift[s], lien.lift[t]), aut.aut.inv(lien.lift[gm.mul(s, t)]));
            aut.inner_witness(a).expect("kappa is a homomorphism")
        })
        .collect();
    let tree = CayleyTree::new(gm);
    let edges = tree.non_tree_edges(gm);
    let z = lien.center.elements();
    let leaves = (z.len() as f64).powi(edges.len() as i32);
    budget::check("lien base search leaves", leaves.min(usize::MAX as f64) as usize, budget::current().max_nodes)?;
    let k = tree.gens.len();
    let mut choice = vec![0usize; edges.len()];
    let mut edge_vals = vec![0usize; n * k];
    loop {
        for x in gm.elements() {
            for i in 0..k {
                edge_vals[x * k + i] = c[x * n + tree.gens[i]];
            }
        }
        for (e, &(x, i)) in edges.iter().enumerate() {
            edge_vals[x * k + i] = g.mul(edge_vals[x * k + i], z[choice[e]]);
        }
        // g(σ, p s) = φ_σ(g(p, s))^-1 g(σ, p) g(σp, s)
        let mut gvals = vec![0usize; n * n];
        for x in gm.elements() {
            for &zz in tree.bfs.iter().skip(1) {
                let (p, i) = tree.parent[zz].expect("non-root");
                let a = g.inv(aut.apply(lien.lift[x], edge_vals[p * k + i]));
                gvals[x * n + zz] = g.mul(g.mul(a, gvals[x * n + p]), edge_vals[gm.mul(x, p) * k + i]);
            }
        }
        if pair_failure(lien, &lien.lift, &gvals).is_none() {
            return Ok(Some(ExtensionCocycle::new_unchecked(lien, lien.lift.clone(), gvals)));
        }
        // Next choice vector.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(None);
            }
            choice[pos] += 1;
            if choice[pos] < z.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// `H^2(Γ, L)` as canonical classes; empty when `κ` is not realized by any
/// extension.
pub fn h2_lien_enumerate(lien: &Arc<Lien>) -> Result<Vec<ExtensionCocycle>> {
    LienContext::new(lien)?.enumerate()
}

pub fn act_by_h2z(xi: &Cocycle2, e: &ExtensionCocycle) -> Result<ExtensionCocycle> {
    e.act_by(xi)
}

pub fn difference_class(e1: &ExtensionCocycle, e2: &ExtensionCocycle) -> Result<Cocycle2> {
    e1.lien.require_same(&e2.lien)?;
    LienContext::new(&e1.lien)?.difference_class(e1, e2)
}

pub fn neutral_via_delta(e0: &ExtensionCocycle, xi: &Cocycle2) -> Result<bool> {
    LienContext::new(&e0.lien)?.neutral_via_delta(e0, xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lien_of(gamma: FiniteGroup, g: FiniteGroup, kappa: impl Fn(&AutGroupData, usize) -> usize) -> Arc<Lien> {
        let g = Arc::new(g);
        let aut = Arc::new(automorphisms(&g).unwrap());
        let k = gamma.elements().map(|s| kappa(&aut, s)).collect();
        Arc::new(Lien::with_aut(Arc::new(gamma), g, aut, k).unwrap())
    }

    fn nontrivial_outer(_: &AutGroupData, s: usize) -> usize {
        if s == 0 { 0 } else { 1 }
    }

    #[test]
    fn s3_class_is_unique_and_neutral() {
        let l = lien_of(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), nontrivial_outer);
        let classes = h2_lien_enumerate(&l).unwrap();
        assert_eq!(classes.len(), 1);
        let w = is_neutral(&classes[0]).unwrap().expect("split");
        assert_eq!(l.aut().perms[w.phi[1]], vec![0, 2, 1]);
    }

    #[test]
    fn z2_over_c2_has_klein_and_c4() {
        let l = lien_of(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2), |_, _| 0);
        let ctx = LienContext::new(&l).unwrap();
        let classes = ctx.enumerate().unwrap();
        assert_eq!(classes.len(), 2);
        let neutral: Vec<bool> = classes.iter().map(|e| is_neutral(e).unwrap().is_some()).collect();
        assert_eq!(neutral.iter().filter(|&&b| b).count(), 1);
        for e in &classes {
            let (grp, _, _) = e.extension_group();
            let cyclic = grp.is_cyclic();
            assert_eq!(cyclic, is_neutral(e).unwrap().is_none());
        }
        let split = classes.iter().find(|e| is_neutral(e).unwrap().is_some()).unwrap();
        let xi = ctx.center_h2().enumerate().unwrap().into_iter().find(|x| !x.is_zero()).unwrap();
        let moved = act_by_h2z(&xi, split).unwrap();
        assert!(is_neutral(&moved).unwrap().is_none());
        assert_eq!(ctx.difference_class(split, &moved).unwrap(), xi);
        assert!(!ctx.neutral_via_delta(split, &xi).unwrap());
        assert!(ctx.neutral_via_delta(split, &Cocycle2::zero(l.center_module())).unwrap());
    }

    #[test]
    fn trivial_gamma_has_one_neutral_class() {
        let l = lien_of(FiniteGroup::trivial(), FiniteGroup::symmetric(3), |_, _| 0);
        let classes = h2_lien_enumerate(&l).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(is_neutral(&classes[0]).unwrap().is_some());
    }

    #[test]
    fn exhaustive_search_agrees_with_split_base() {
        for g in [FiniteGroup::quaternion(), FiniteGroup::dihedral(4), FiniteGroup::cyclic(4)] {
            let l = lien_of(FiniteGroup::cyclic(2), g, nontrivial_outer);
            let ctx = LienContext::new(&l).unwrap();
            let found = search_base(&l).unwrap().expect("realizable");
            assert!(ctx.canonical(&found).is_ok());
            let classes = ctx.enumerate().unwrap();
            assert!(classes.iter().any(|c| ctx.are_equivalent(c, &found).unwrap()));
        }
    }

    #[test]
    fn neutral_witness_rebuilds_the_class() {
        let l = lien_of(FiniteGroup::cyclic(2), FiniteGroup::quaternion(), nontrivial_outer);
        let ctx = LienContext::new(&l).unwrap();
        for e in ctx.enumerate().unwrap() {
            let (grp, incl, proj) = e.extension_group();
            let back = ExtensionCocycle::from_extension(&l, &grp, &incl, &proj).unwrap();
            assert!(ctx.are_equivalent(&e, &back).unwrap());
            if let Some(w) = is_neutral(&e).unwrap() {
                let split = ExtensionCocycle::split(&l, w.phi.clone()).unwrap();
                let (sg, si, sp) = split.extension_group();
                let rebuilt = ExtensionCocycle::from_extension(&l, &sg, &si, &sp).unwrap();
                assert!(ctx.are_equivalent(&e, &rebuilt).unwrap());
            }
        }
    }
}
