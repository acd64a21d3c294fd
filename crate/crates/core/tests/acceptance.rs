//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::catch_unwind;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use modlat::abelian::AbelianPresentation;
use modlat::bounds::Bounds;
use modlat::counting::{
    complement_bijection, count_intersecting, count_maximal, count_maximal_homogeneous, domination_formula,
    gaussian_binomial, half_pairing,
};
use modlat::enumeration::{enumerate_submodules, enumerate_subspaces};
use modlat::field::FieldSpec;
use modlat::goursat::Product;
use modlat::graph::{
    build_graph, chromatic_number, classify_structure, components_and_diameter, cut_edges, cut_vertices,
    domination_facts, is_planar, max_clique, min_dominating_set,
};
use modlat::harness::{run_suite, Manifest, Outcome, Status};
use modlat::module::{Component, Module, ModuleSpec, Submodule, SubmoduleLattice};
use num_bigint::BigUint;

type Checked = Result<String, String>;
type Criterion = (&'static str, fn() -> Checked);

fn ss(parts: &[(&str, usize, u64)]) -> ModuleSpec {
    ModuleSpec::semisimple(
        parts
            .iter()
            .map(|&(t, n, q)| Component::new(t, n, FieldSpec::of_order(q).unwrap()))
            .collect(),
    )
}

fn z(moduli: &[u32]) -> ModuleSpec {
    ModuleSpec::explicit(AbelianPresentation::z_module(moduli.to_vec()))
}

fn lattice(spec: &ModuleSpec) -> SubmoduleLattice {
    enumerate_submodules(&Module::new(spec.clone(), &Bounds::default()).unwrap()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

/// Maximal submodules of nS: closed form against the lattice.
fn maximal_homogeneous() -> Checked {
    for d in [2u64, 3] {
        for n in 1..=4usize {
            let l = lattice(&ss(&[("S", n, d)]));
            let formula = count_maximal_homogeneous(n as u32, d).map_err(|e| e.to_string())?;
            let scanned = l.maximal_count(l.top());
            ensure(formula == big(scanned) && scanned == l.mu(n - 1), || {
                format!("d={d} n={n}: formula {formula}, lattice {scanned}")
            })?;
        }
    }
    let seven = count_maximal_homogeneous(3, 2).unwrap();
    ensure(seven == big(7), || format!("(d=2, n=3) gave {seven}"))?;
    Ok("d in {2,3}, n in 1..=4".into())
}

fn maximal_sum() -> Checked {
    let spec = ss(&[("S", 2, 2), ("T", 1, 2)]);
    let formula = count_maximal(&spec).map_err(|e| e.to_string())?;
    let l = lattice(&spec);
    let scanned = l.maximal_count(l.top());
    ensure(formula == big(4) && scanned == 4, || format!("formula {formula}, scan {scanned}"))?;
    Ok("2S+T/F2 has 4 maximal submodules".into())
}

fn strata_f2_4() -> Checked {
    let f2 = FieldSpec::of_order(2).unwrap();
    let want = [1usize, 15, 35, 15, 1];
    let l = lattice(&ss(&[("S", 4, 2)]));
    for (i, &w) in want.iter().enumerate() {
        let g = gaussian_binomial(4, i as u32, 2).unwrap();
        let listed = enumerate_subspaces(&f2, 4, Some(i)).map_err(|e| e.to_string())?.len();
        ensure(g == big(w) && listed == w && l.mu(i) == w, || {
            format!("i={i}: binomial {g}, listed {listed}, lattice {}", l.mu(i))
        })?;
    }
    Ok(format!("{want:?}"))
}

/// Pair counts in F_2^3 from explicit vector sets.
fn intersecting_counts() -> Checked {
    let (n, d) = (3usize, 2u64);
    let f2 = FieldSpec::of_order(2).unwrap();
    let subspaces = enumerate_subspaces(&f2, n, None).map_err(|e| e.to_string())?;
    let sets: Vec<(usize, BTreeSet<Vec<u8>>)> = subspaces
        .iter()
        .map(|s| (s.dim(), s.vectors().into_iter().collect()))
        .collect();
    let dim_of = |size: usize| size.trailing_zeros() as usize;
    let mut checked = 0;
    for (j, u) in &sets {
        for i in 0..=n {
            for m in 0..=n {
                let brute = sets
                    .iter()
                    .filter(|(di, w)| *di == i && dim_of(u.intersection(w).count()) == m)
                    .count();
                let valid = m <= i.min(*j) && i - m <= n - j;
                let formula = if valid {
                    count_intersecting(n as u32, d, *j as u32, i as u32, m as u32).map_err(|e| e.to_string())?
                } else {
                    big(0)
                };
                ensure(formula == big(brute), || {
                    format!("(j,i,m)=({j},{i},{m}): formula {formula}, brute {brute}")
                })?;
                checked += valid as usize;
            }
        }
        let complements = sets
            .iter()
            .filter(|(di, w)| *di == n - j && u.intersection(w).count() == 1)
            .count();
        let want = d.pow(((n - j) * j) as u32) as usize;
        ensure(complements == want, || format!("j={j}: {complements} complements, expected {want}"))?;
    }
    Ok(format!("{checked} valid (U, i, m) cases and complement counts"))
}

fn domination() -> Checked {
    let cases = [
        ("Z/4", z(&[4]), 1usize),
        ("S+T", ss(&[("S", 1, 2), ("T", 1, 2)]), 2),
        ("2S+T/F2", ss(&[("S", 2, 2), ("T", 1, 2)]), 2),
        ("3S/F2", ss(&[("S", 3, 2)]), 3),
        ("3S/F3", ss(&[("S", 3, 3)]), 4),
    ];
    let mut seen = Vec::new();
    for (name, spec, want) in cases {
        let l = lattice(&spec);
        let ig = build_graph(&l);
        let gamma = min_dominating_set(ig.graph(), &Bounds::default())
            .map_err(|e| format!("{name}: {e}"))?
            .len();
        let formula = domination_formula(&domination_facts(&l)) as usize;
        ensure(gamma == want && formula == want, || {
            format!("{name}: solver {gamma}, formula {formula}, expected {want}")
        })?;
        if name == "3S/F3" {
            ensure(ig.graph().vertex_count() == 26, || "3S/F3 should have 26 vertices".into())?;
        }
        seen.push(format!("{name}={gamma}"));
    }
    Ok(seen.join(" "))
}

fn chi_odd() -> Checked {
    let l = lattice(&ss(&[("S", 3, 2)]));
    let g = build_graph(&l);
    let (chi, _) = chromatic_number(g.graph(), &Bounds::default()).map_err(|e| e.to_string())?;
    ensure(g.graph().vertex_count() == 14 && chi == 7, || {
        format!("{} vertices, χ = {chi}", g.graph().vertex_count())
    })?;
    Ok("χ(3S/F2) = 7 on 14 vertices".into())
}

fn chi_even() -> Checked {
    let start = Instant::now();
    let l = lattice(&ss(&[("S", 2, 2), ("T", 1, 2), ("U", 1, 2)]));
    let g = build_graph(&l);
    let (chi, _) = chromatic_number(g.graph(), &Bounds::default()).map_err(|e| e.to_string())?;
    let formula = l.mu(2) / 2 + l.mu(3);
    let took = start.elapsed();
    ensure(
        g.graph().vertex_count() == 18 && chi == 9 && formula == 9 && l.mu(2) == 8 && l.mu(3) == 5,
        || format!("{} vertices, χ = {chi}, formula {formula}", g.graph().vertex_count()),
    )?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("χ(2S+T+U/F2) = 9 = 8/2 + 5 in {took:.2?}"))
}

fn planarity_table() -> Checked {
    let bounds = Bounds::default();
    let cases = [
        ("Z/16", z(&[16]), true),
        ("Z/32", z(&[32]), true),
        ("Z/64", z(&[64]), false),
        ("3S/F2", ss(&[("S", 3, 2)]), false),
        ("S+S+T/F2", ss(&[("S", 2, 2), ("T", 1, 2)]), true),
        ("Z/4xZ/2", z(&[4, 2]), true),
    ];
    for (name, spec, want) in cases {
        let l = lattice(&spec);
        let g = build_graph(&l);
        let v = classify_structure(&l);
        let planar = is_planar(g.graph(), &bounds).map_err(|e| e.to_string())?;
        let omega = max_clique(g.graph(), &bounds).map_err(|e| e.to_string())?.len();
        ensure(planar == want && v.planar == want, || {
            format!("{name}: tested {planar}, classifier {}, expected {want}", v.planar)
        })?;
        ensure(
            v.no_k3 == (omega < 3) && v.no_k4 == (omega < 4) && v.no_k5 == (omega < 5),
            || format!("{name}: ω = {omega} disagrees with the clique classifier"),
        )?;
        if name == "Z/4xZ/2" {
            ensure(omega == 4, || format!("Z/4xZ/2: ω = {omega}, expected K4 but no K5"))?;
        }
    }
    Ok("6 instances".into())
}

fn structure() -> Checked {
    let manifest = Manifest::builtin("small").map_err(|e| e.to_string())?;
    let specs = manifest.specs().map_err(|e| e.to_string())?;
    for (name, spec) in &specs {
        let l = lattice(spec);
        let g = build_graph(&l);
        let c = components_and_diameter(g.graph());
        ensure(c.diameters.iter().all(|&d| d <= 2), || format!("{name}: diameters {:?}", c.diameters))?;
    }
    let l = lattice(&z(&[4, 2]));
    let g = build_graph(&l);
    let socle = g.vertex_of(l.socle()).ok_or("socle is not a vertex")?;
    let cuts = cut_vertices(g.graph());
    ensure(cuts == vec![socle], || format!("Z/4xZ/2 cut vertices {cuts:?}, socle {socle}"))?;
    let bridges = cut_edges(g.graph());
    ensure(
        bridges.len() == 2
            && bridges.iter().all(|&(a, b)| {
                let other = if a == socle { b } else { a };
                (a == socle || b == socle) && g.graph().degree(other) == 1
            }),
        || format!("Z/4xZ/2 bridges {bridges:?}"),
    )?;
    let l8 = lattice(&z(&[8]));
    let g8 = build_graph(&l8);
    ensure(g8.graph().edge_count() == 1 && cut_edges(g8.graph()) == vec![(0, 1)], || {
        "Z/8 edge is not a bridge".into()
    })?;
    Ok(format!("{} instances; Z/4xZ/2 and Z/8 bridges", specs.len()))
}

/// Subgroups of `Z/m_1 × … × Z/m_t` by checking every subset.
fn brute_subgroups(moduli: &[u32]) -> usize {
    let mut elems: Vec<Vec<u32>> = vec![vec![]];
    for &m in moduli {
        elems = elems
            .into_iter()
            .flat_map(|e| (0..m).map(move |x| [e.clone(), vec![x]].concat()))
            .collect();
    }
    let index = |v: &[u32]| elems.iter().position(|e| e == v).unwrap();
    let sum: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let s: Vec<u32> = a.iter().zip(b).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
                    index(&s)
                })
                .collect()
        })
        .collect();
    let n = elems.len();
    (0u64..1 << n)
        .filter(|&mask| {
            mask & 1 == 1
                && (0..n).all(|a| {
                    mask >> a & 1 == 0 || (0..n).all(|b| mask >> b & 1 == 0 || mask >> sum[a][b] & 1 == 1)
                })
        })
        .count()
}

fn goursat() -> Checked {
    let mut seen = Vec::new();
    for (l, r, want) in [(2u32, 2u32, 5usize), (4, 2, 8), (2, 3, 4)] {
        let product = Product::new(&z(&[l]), &z(&[r]), &Bounds::default()).map_err(|e| e.to_string())?;
        let lat = enumerate_submodules(&product.product).map_err(|e| e.to_string())?;
        for m in lat.members() {
            let set = m.elements().ok_or("explicit product")?;
            let q = product.quintuple_of(set).map_err(|e| e.to_string())?;
            let back: Submodule = product.submodule_of(&q).map_err(|e| e.to_string())?;
            ensure(back.elements() == Some(set), || format!("Z/{l}xZ/{r}: round trip changed a submodule"))?;
        }
        let quintuples = product.enumerate_quintuples().map_err(|e| e.to_string())?.len();
        let brute = brute_subgroups(&[l, r]);
        ensure(quintuples == want && lat.len() == want && brute == want, || {
            format!("Z/{l}xZ/{r}: quintuples {quintuples}, join closure {}, subsets {brute}", lat.len())
        })?;
        seen.push(format!("Z/{l}xZ/{r}={want}"));
    }
    Ok(seen.join(" "))
}

/// `X ∩ Y = 0` and `X + Y = V`, read from the component subspaces.
fn complementary(x: &Submodule, y: &Submodule, mults: &[usize]) -> bool {
    let (px, py) = (x.parts().unwrap(), y.parts().unwrap());
    px.iter().zip(py).zip(mults).all(|((a, b), &n)| {
        let va: BTreeSet<Vec<u8>> = a.vectors().into_iter().collect();
        let shared = b.vectors().into_iter().filter(|v| va.contains(v)).count();
        shared == 1 && a.dim() + b.dim() == n
    })
}

fn disjoint(x: &Submodule, y: &Submodule) -> bool {
    x.parts().unwrap().iter().zip(y.parts().unwrap()).all(|(a, b)| {
        let va: BTreeSet<Vec<u8>> = a.vectors().into_iter().collect();
        b.vectors().into_iter().filter(|v| va.contains(v)).count() == 1
    })
}

fn pairings() -> Checked {
    for (name, spec) in [
        ("2S/F2", ss(&[("S", 2, 2)])),
        ("3S/F2", ss(&[("S", 3, 2)])),
        ("2S+T/F2", ss(&[("S", 2, 2), ("T", 1, 2)])),
    ] {
        let l = lattice(&spec);
        let mults: Vec<usize> = l.module().components().unwrap().iter().map(|c| c.mult).collect();
        let phi = complement_bijection(&l).map_err(|e| format!("{name}: {e}"))?;
        ensure(phi.iter().collect::<BTreeSet<_>>().len() == l.len(), || format!("{name}: φ not injective"))?;
        for (x, &y) in phi.iter().enumerate() {
            ensure(complementary(l.member(x), l.member(y), &mults), || {
                format!("{name}: φ({}) = {} is not a complement", l.label(x), l.label(y))
            })?;
        }
    }
    for (name, spec, k) in [
        ("S+T", ss(&[("S", 1, 2), ("T", 1, 2)]), 1usize),
        ("2S+T+U/F2", ss(&[("S", 2, 2), ("T", 1, 2), ("U", 1, 2)]), 2),
    ] {
        let l = lattice(&spec);
        let p = half_pairing(&l, k).map_err(|e| format!("{name}: {e}"))?;
        let mut all: Vec<usize> = p.a.iter().chain(&p.b).copied().collect();
        all.sort_unstable();
        ensure(p.excluded.is_none() && p.a.len() == p.b.len() && all == l.strata()[k], || {
            format!("{name}: pairing does not split stratum {k}")
        })?;
        for (&x, &y) in p.a.iter().zip(&p.b) {
            ensure(disjoint(l.member(x), l.member(y)), || {
                format!("{name}: {} meets {}", l.label(x), l.label(y))
            })?;
        }
    }
    Ok("φ on 3 modules, pairings on S+T and 2S+T+U".into())
}

fn properties() -> Checked {
    let ids = ["Modularity", "Cor6.5", "Rem7.2", "Lem7.4", "Lem7.5", "Lem8.2", "Rem6.3"];
    let manifest = Manifest::builtin("small").map_err(|e| e.to_string())?;
    let only: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    let report = run_suite("small", &manifest, &only, &Bounds::default()).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    for c in &report.checks {
        if c.status != Status::Pass {
            let mut line = format!("{} {:?} {}", c.id, c.status, c.note.clone().unwrap_or_default());
            for r in &c.results {
                if let Outcome::Fail { witness } = &r.outcome {
                    line += &format!(" [{} {}: expected {}, got {}]", r.instance, witness.spec, witness.expected, witness.actual);
                }
            }
            problems.push(line);
        }
    }
    // The elementary abelian oracle must have run for p in {2, 3} and n <= 3.
    let rem63 = report.checks.iter().find(|c| c.id == "Rem6.3").ok_or("Rem6.3 missing")?;
    let with_oracle = rem63
        .results
        .iter()
        .filter(|r| matches!(&r.outcome, Outcome::Pass { detail, .. } if detail.contains("elementary abelian")))
        .count();
    if with_oracle < 12 {
        problems.push(format!("elementary abelian oracle ran on {with_oracle} instances, expected 12"));
    }
    if problems.is_empty() {
        Ok(format!("{} property checks", ids.len()))
    } else {
        Err(problems.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("maximal submodules of nS", maximal_homogeneous),
        ("maximal submodules of 2S+T/F2", maximal_sum),
        ("strata of F2^4", strata_f2_4),
        ("intersection-length counts in F2^3", intersecting_counts),
        ("domination numbers", domination),
        ("chromatic number, odd length", chi_odd),
        ("chromatic number, even length", chi_even),
        ("planarity and cliques", planarity_table),
        ("diameter, cut vertices and bridges", structure),
        ("product submodules by quintuples", goursat),
        ("complement bijection and half pairings", pairings),
        ("lattice property checks", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
