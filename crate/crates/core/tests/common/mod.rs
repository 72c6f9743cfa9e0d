//! Brute-force oracles. Nothing here calls the search code under test; only
//! group tables and actions are shared.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use cohomolib::cohomology::GammaAction;
use cohomolib::global::GlobalDatum;
use cohomolib::group::{automorphisms, FiniteGroup};

pub fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
    Arc::new(g)
}

/// All subgroups, by closing under adding one element at a time.
pub fn subgroups(g: &FiniteGroup, within: &[usize]) -> Vec<Vec<usize>> {
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..g.order()).filter(|&x| seen[x]).collect()
    };
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0]]);
    let mut frontier = vec![vec![0]];
    while let Some(h) = frontier.pop() {
        for &x in within {
            if h.contains(&x) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k = close(&gens);
            if out.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    out.into_iter().collect()
}

/// Every 1-cocycle, by assigning values element by element and checking
/// every cocycle identity whose three entries are known.
pub fn oracle_cocycles(ctx: &GammaAction) -> Vec<Vec<usize>> {
    let (gm, g) = (ctx.gamma(), ctx.target());
    let n = gm.order();
    let mut out = Vec::new();
    let mut vals = vec![usize::MAX; n];
    fn rec(ctx: &GammaAction, x: usize, vals: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let (gm, g) = (ctx.gamma(), ctx.target());
        let n = gm.order();
        if x == n {
            out.push(vals.clone());
            return;
        }
        for y in g.elements() {
            vals[x] = y;
            let ok = (0..=x).all(|s| {
                (0..=x).all(|t| {
                    let st = gm.mul(s, t);
                    st > x || (s != x && t != x && st != x) || vals[st] == g.mul(vals[s], ctx.act(s, vals[t]))
                })
            });
            if ok {
                rec(ctx, x + 1, vals, out);
            }
        }
        vals[x] = usize::MAX;
    }
    let _ = g;
    rec(ctx, 0, &mut vals, &mut out);
    out
}

/// `g^-1 a_σ σ(g)`.
pub fn translate(ctx: &GammaAction, a: &[usize], x: usize) -> Vec<usize> {
    let g = ctx.target();
    a.iter().enumerate().map(|(s, &v)| g.mul(g.mul(g.inv(x), v), ctx.act(s, x))).collect()
}

pub fn orbit_min(ctx: &GammaAction, a: &[usize]) -> Vec<usize> {
    ctx.target().elements().map(|x| translate(ctx, a, x)).min().unwrap()
}

/// Classes of H^1 as least orbit members.
pub fn oracle_h1(ctx: &GammaAction) -> BTreeSet<Vec<usize>> {
    oracle_cocycles(ctx).iter().map(|a| orbit_min(ctx, a)).collect()
}

fn add_pow(g: &FiniteGroup, a: usize, b: usize) -> usize {
    g.mul(a, b)
}

/// `δh(σ, τ) = h_σ + σ h_τ − h_{στ}` for an abelian target.
pub fn coboundary2(ctx: &GammaAction, h: &[usize]) -> Vec<usize> {
    let (gm, g) = (ctx.gamma(), ctx.target());
    let n = gm.order();
    let mut v = vec![0; n * n];
    for s in 0..n {
        for t in 0..n {
            v[s * n + t] = g.mul(g.mul(h[s], ctx.act(s, h[t])), g.inv(h[gm.mul(s, t)]));
        }
    }
    v
}

pub fn is_cocycle2(ctx: &GammaAction, v: &[usize]) -> bool {
    let (gm, g) = (ctx.gamma(), ctx.target());
    let n = gm.order();
    (0..n).all(|s| {
        (0..n).all(|t| {
            (0..n).all(|u| {
                let lhs = g.mul(ctx.act(s, v[t * n + u]), v[s * n + gm.mul(t, u)]);
                let rhs = g.mul(v[gm.mul(s, t) * n + u], v[s * n + t]);
                lhs == rhs
            })
        })
    })
}

/// All 2-coboundaries; feasible when `|A|^|Γ|` is small.
pub fn oracle_b2(ctx: &GammaAction) -> HashSet<Vec<usize>> {
    let (n, m) = (ctx.gamma().order(), ctx.target().order());
    let mut out = HashSet::new();
    let mut h = vec![0; n];
    loop {
        out.insert(coboundary2(ctx, &h));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            h[k] += 1;
            if h[k] < m {
                break;
            }
            h[k] = 0;
            k += 1;
        }
    }
}

/// `|Z^2|` by a pruned scan over all 2-cochains (entries in row-major
/// order, each identity checked once its four entries are fixed).
pub fn oracle_z2_count(ctx: &GammaAction) -> usize {
    let (gm, g) = (ctx.gamma(), ctx.target());
    let n = gm.order();
    let checks: Vec<Vec<(usize, usize, usize)>> = {
        let mut by_last = vec![Vec::new(); n * n];
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    let idx = [t * n + u, s * n + gm.mul(t, u), gm.mul(s, t) * n + u, s * n + t];
                    by_last[*idx.iter().max().unwrap()].push((s, t, u));
                }
            }
        }
        by_last
    };
    fn rec(ctx: &GammaAction, checks: &[Vec<(usize, usize, usize)>], k: usize, v: &mut Vec<usize>) -> usize {
        let (gm, g) = (ctx.gamma(), ctx.target());
        let n = gm.order();
        if k == n * n {
            return 1;
        }
        let mut total = 0;
        for y in g.elements() {
            v[k] = y;
            let ok = checks[k].iter().all(|&(s, t, u)| {
                g.mul(ctx.act(s, v[t * n + u]), v[s * n + gm.mul(t, u)]) == g.mul(v[gm.mul(s, t) * n + u], v[s * n + t])
            });
            if ok {
                total += rec(ctx, checks, k + 1, v);
            }
        }
        total
    }
    let _ = add_pow(g, 0, 0);
    let mut v = vec![0; n * n];
    rec(ctx, &checks, 0, &mut v)
}

/// Generator σ = 1 of a cyclic Γ: `(|ker N / (σ−1)A|, |A^Γ / N A|)`.
pub fn tate_counts(ctx: &GammaAction) -> (usize, usize) {
    let (gm, a) = (ctx.gamma(), ctx.target());
    let gen = (0..gm.order()).find(|&s| gm.element_order(s) == gm.order()).unwrap();
    let norm = |x: usize| gm.elements().fold(0, |acc, s| a.mul(acc, ctx.act(s, x)));
    let ker_n = a.elements().filter(|&x| norm(x) == 0).count();
    let im_d: HashSet<usize> = a.elements().map(|x| a.mul(ctx.act(gen, x), a.inv(x))).collect();
    let fixed = a.elements().filter(|&x| ctx.act(gen, x) == x).count();
    let im_n: HashSet<usize> = a.elements().map(norm).collect();
    (ker_n / im_d.len(), fixed / im_n.len())
}

/// All automorphisms of `a` of order dividing `m`, as permutations.
pub fn automorphisms_of_order_dividing(a: &FiniteGroup, m: usize) -> Vec<Vec<usize>> {
    let aut = automorphisms(a).unwrap();
    aut.perms
        .iter()
        .filter(|p| {
            let mut x: Vec<usize> = (0..a.order()).collect();
            for _ in 0..m {
                x = x.iter().map(|&i| p[i]).collect();
            }
            x.iter().enumerate().all(|(i, &y)| i == y)
        })
        .cloned()
        .collect()
}

/// Cyclic Γ = C_m acting through `σ^k -> p^k`.
pub fn cyclic_action(m: usize, a: Arc<FiniteGroup>, p: &[usize]) -> GammaAction {
    let mut perms = vec![(0..a.order()).collect::<Vec<_>>()];
    for k in 1..m {
        let prev: &Vec<usize> = &perms[k - 1];
        perms.push(prev.iter().map(|&i| p[i]).collect());
    }
    GammaAction::new(arc(FiniteGroup::cyclic(m)), a, perms).unwrap()
}

pub fn trivial_on(ctx: &GammaAction, a: &[usize], sub: &[usize]) -> bool {
    let g = ctx.target();
    g.elements().any(|x| sub.iter().all(|&s| g.mul(g.mul(g.inv(x), a[s]), ctx.act(s, x)) == 0))
}

pub struct OracleFlags {
    pub ramified: bool,
    pub cyclic: bool,
    pub totally_ramified: bool,
}

fn is_cyclic_quotient(gm: &FiniteGroup, big: &[usize], delta: &[usize]) -> bool {
    // Γ_v / Δ cyclic: some x whose powers meet every coset.
    big.iter().any(|&x| {
        let mut covered: HashSet<usize> = HashSet::new();
        let mut p = 0;
        for _ in 0..big.len() {
            for &d in delta {
                covered.insert(gm.mul(p, d));
            }
            p = gm.mul(p, x);
        }
        covered.len() == big.len()
    })
}

pub fn oracle_flags(d: &GlobalDatum, v: usize, ctx: &GammaAction, a: &[usize]) -> OracleFlags {
    let gm = &d.gamma;
    let p = &d.places[v];
    let big = p.decomposition.elements();
    let inertia = p.inertia.elements();
    let killed: Vec<Vec<usize>> = subgroups(gm, big).into_iter().filter(|h| trivial_on(ctx, a, h)).collect();
    let cyclic = killed.iter().any(|h| {
        let normal = big.iter().all(|&x| h.iter().all(|&y| h.contains(&gm.mul(gm.mul(x, y), gm.inv(x)))));
        normal && is_cyclic_quotient(gm, big, h)
    });
    let tr = killed.iter().any(|h| {
        let prod: HashSet<usize> = h.iter().flat_map(|&x| inertia.iter().map(move |&i| gm.mul(x, i))).collect();
        prod.len() == big.len()
    });
    OracleFlags { ramified: !trivial_on(ctx, a, inertia), cyclic, totally_ramified: tr }
}

/// Conditions (i) and (ii) for a cocycle `a`, with targets given as
/// `(place, values over Γ_v)`.
pub fn oracle_conditions(d: &GlobalDatum, ctx: &GammaAction, targets: &[(usize, Vec<usize>)], a: &[usize]) -> bool {
    let gm = &d.gamma;
    let g = ctx.target();
    for (v, beta) in targets {
        let e = d.places[*v].decomposition.elements();
        let local: Vec<usize> = e.iter().map(|&s| a[s]).collect();
        let same = g.elements().any(|x| {
            e.iter().enumerate().all(|(i, &s)| g.mul(g.mul(g.inv(x), local[i]), ctx.act(s, x)) == beta[i])
        });
        if !same {
            return false;
        }
    }
    let _ = gm;
    (0..d.places.len()).filter(|v| !targets.iter().any(|(w, _)| w == v)).all(|v| {
        let f = oracle_flags(d, v, ctx, a);
        let p = &d.places[v];
        let p_place = p.kind == cohomolib::global::PlaceKind::Finite
            && p.q_mod_n % d.n == 1 % d.n
            && p.decomposition.elements().iter().all(|&s| d.n_l.contains(s));
        f.cyclic && (!f.ramified || (f.totally_ramified && p_place))
    })
}

/// Solution set of the local-global problem by exhaustive filtering: least
/// orbit members of admissible cocycles.
pub fn oracle_solutions(d: &GlobalDatum, ctx: &GammaAction, targets: &[(usize, Vec<usize>)]) -> BTreeSet<Vec<usize>> {
    oracle_cocycles(ctx)
        .into_iter()
        .filter(|a| oracle_conditions(d, ctx, targets, a))
        .map(|a| orbit_min(ctx, &a))
        .collect()
}

/// Up to `limit` actions of `gamma` on `g`, the trivial one first, found by
/// trying automorphism images for the generators in lexicographic order.
pub fn actions(gamma: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>, limit: usize) -> Vec<GammaAction> {
    let mut out = vec![GammaAction::trivial(gamma.clone(), g.clone())];
    let gens = gamma.generators().to_vec();
    if gens.is_empty() || limit <= 1 {
        return out;
    }
    let aut = automorphisms(g).unwrap();
    let cands: Vec<Vec<Vec<usize>>> = gens
        .iter()
        .map(|&x| automorphisms_of_order_dividing_in(&aut.perms, gamma.element_order(x)))
        .collect();
    let mut idx = vec![0usize; gens.len()];
    let mut attempts = 0;
    loop {
        let images: Vec<Vec<usize>> = idx.iter().zip(&cands).map(|(&i, c)| c[i].clone()).collect();
        if let Ok(a) = GammaAction::from_generator_images(gamma.clone(), g.clone(), &images) {
            if !out.contains(&a) {
                out.push(a);
                if out.len() >= limit {
                    return out;
                }
            }
        }
        attempts += 1;
        if attempts > 20_000 {
            return out;
        }
        // Odometer, last generator fastest, skipping the all-identity start.
        let mut k = gens.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn automorphisms_of_order_dividing_in(perms: &[Vec<usize>], m: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = perms
        .iter()
        .filter(|p| {
            let mut x: Vec<usize> = (0..p.len()).collect();
            for _ in 0..m {
                x = x.iter().map(|&i| p[i]).collect();
            }
            x.iter().enumerate().all(|(i, &y)| i == y)
        })
        .cloned()
        .collect();
    // Nontrivial images first so the second action found is a real one.
    v.sort_by_key(|p| p.iter().enumerate().all(|(i, &y)| i == y));
    v
}

/// The alternating group of degree 4.
pub fn a4() -> FiniteGroup {
    FiniteGroup::from_cycles(4, &[vec![vec![0, 1, 2]], vec![vec![0, 1], vec![2, 3]]]).unwrap().with_name("A4")
}

pub fn group(name: &str) -> Arc<FiniteGroup> {
    if name == "A4" {
        return arc(a4());
    }
    arc(FiniteGroup::by_name(name).unwrap())
}

/// Normal subgroups other than the trivial one and the whole group.
pub fn proper_normal_subgroups(g: &FiniteGroup) -> Vec<cohomolib::Subgroup> {
    g.all_subgroups().into_iter().filter(|s| s.is_normal_in(g) && !s.is_trivial() && !s.is_whole()).collect()
}
