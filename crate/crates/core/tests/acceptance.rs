//! Exit criteria, one line per criterion. Runs without the libtest harness
//! so each criterion reports on its own line; any failure exits nonzero.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use fanfold::catalog::{self, CatalogId};
use fanfold::enumeration::enumerate_smooth_complete_fans;
use fanfold::projectivity::{self, ProjectivityCertificate};
use fanfold::search::{projectivize, SearchOptions};
use fanfold::surgery::{self, SurgeryKind};
use fanfold::{contract_ray, star_subdivide, Fan};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Checks {
    passed: usize,
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }
}

fn build(id: CatalogId, params: &[i64]) -> Fan {
    catalog::build(id, params).unwrap()
}

fn projective(fan: &Fan) -> bool {
    projectivity::is_projective(fan).unwrap().projective
}

fn criterion_1(c: &mut Checks) {
    let w = w();
    c.check(w.is_smooth() && w.is_complete(), || "W is not smooth and complete".into());
    c.check(w.picard_number().unwrap() == 4, || "W picard number is not 4".into());
    let flops: Vec<Vec<usize>> = surgery::flopping_walls(&w).unwrap().into_iter().map(|x| x.wall_rays).collect();
    c.check(flops == vec![vec![0, 6], vec![1, 4], vec![2, 5]], || format!("W flopping walls {flops:?}"));
    let verdict = projectivity::is_projective(&w).unwrap();
    c.check(!verdict.projective, || "W reported projective".into());
    let farkas = matches!(verdict.certificate, ProjectivityCertificate::Farkas(_));
    let inequalities = projectivity::wall_inequalities(&w).unwrap();
    c.check(farkas && verdict.certificate.verify(&inequalities), || "W certificate does not verify".into());
    c.check(certificate_holds(&w, &verdict.certificate), || "W certificate fails the direct check".into());
    for wall in surgery::flopping_walls(&w).unwrap() {
        let (g, _) = surgery::perform_surgery(&w, &wall).unwrap();
        c.check(g.is_smooth() && projective(&g) && oracle_projective(&g), || {
            format!("flop of W at {:?} is not smooth projective", wall.wall_rays)
        });
    }
}

fn criterion_2(c: &mut Checks) {
    let mut family: Vec<(CatalogId, Vec<i64>)> = (-3..=3).map(|a| (CatalogId::Z2, vec![a])).collect();
    family.push((CatalogId::Z10, vec![]));
    for a in -2..=2 {
        for b in -2..=2 {
            family.push((CatalogId::Z11, vec![a, b]));
        }
    }
    for (id, p) in &family {
        c.check(projective(&build(*id, p)), || format!("{id}{p:?} not projective"));
    }
    // blow-downs named by 1-based ray: Z2 at v2, v3, v7; Z10 at v3, v4, v6; Z11 at v2, v6
    let chains: Vec<(CatalogId, Vec<i64>, Vec<usize>, usize)> = (-3..=3)
        .map(|a| (CatalogId::Z2, vec![a], vec![2, 3, 7], 2))
        .chain([(CatalogId::Z10, vec![], vec![3, 4, 6], 2)])
        .chain((-2..=2).flat_map(|a| (-2..=2).map(move |b| (CatalogId::Z11, vec![a, b], vec![2, 6], 3))))
        .collect();
    for (id, p, labels, rho) in chains {
        let f = build(id, &p);
        let rays: Vec<Vec<i64>> = labels.iter().map(|&l| f.ray(l - 1).coords().to_vec()).collect();
        let mut cur = f.clone();
        let mut ok = true;
        for r in &rays {
            match cur.rays().iter().position(|x| x.coords() == r.as_slice()).map(|i| contract_ray(&cur, i)) {
                Some(Ok(next)) => cur = next,
                _ => ok = false,
            }
            if !ok {
                break;
            }
            ok = projective(&cur);
        }
        c.check(ok && cur.picard_number().unwrap() == rho, || format!("{id}{p:?} chain {labels:?} does not replay"));
    }
}

/// The verdicts as stated for the grids, written out independently of the
/// catalog's predicate.
fn stated_verdict(id: CatalogId, p: &[i64]) -> bool {
    match id {
        CatalogId::W7_5 => false,
        CatalogId::Z2 | CatalogId::Z10 | CatalogId::Z11 => true,
        CatalogId::Z5p => p[0] == 0,
        CatalogId::Z5pp | CatalogId::Z8 | CatalogId::Z12 | CatalogId::Z14p | CatalogId::Z14pp => false,
        CatalogId::Z13p => p[0] * p[1] == 0,
        CatalogId::Z13pp => p[1] == 0 || p[0] == p[2],
    }
}

fn criterion_3_instances() -> Vec<(CatalogId, Vec<i64>)> {
    catalog_grid()
        .into_iter()
        .filter(|(id, _)| !matches!(id, CatalogId::W7_5 | CatalogId::Z2 | CatalogId::Z10 | CatalogId::Z11))
        .collect()
}

fn criterion_3(c: &mut Checks) {
    for (id, p) in criterion_3_instances() {
        let got = projective(&build(id, &p));
        let expected = catalog::expected_projectivity(id, &p).unwrap();
        c.check(got == expected && expected == stated_verdict(id, &p), || {
            format!("{id}{p:?}: computed {got}, expected {expected}")
        });
    }
}

fn criterion_4(c: &mut Checks) {
    let z12 = build(CatalogId::Z12, &[]);
    c.check(!projectivity::nontrivial_nef_exists(&z12).unwrap(), || "Z12 has a nontrivial nef divisor".into());
}

fn criterion_5(c: &mut Checks) {
    let mut starts: Vec<(CatalogId, Vec<i64>)> = criterion_3_instances()
        .into_iter()
        .filter(|(id, p)| !catalog::expected_projectivity(*id, p).unwrap())
        .collect();
    starts.push((CatalogId::W7_5, vec![]));
    for (id, p) in starts {
        let res = projectivize(&build(id, &p), &SearchOptions::new(2)).unwrap();
        c.check(res.found && res.steps.len() <= 2, || format!("{id}{p:?}: no projective model within 2 steps"));
        c.check(
            res.steps.iter().all(|s| matches!(s.classification.kind, SurgeryKind::Flop | SurgeryKind::AntiFlip)),
            || format!("{id}{p:?}: sequence uses a flip"),
        );
    }
}

fn criterion_6(c: &mut Checks) {
    for params in [[2, 7, 4, 2], [2, 3, 5, 7]] {
        let f = build(CatalogId::Z13pp, &params);
        let started = Instant::now();
        let report = enumerate_smooth_complete_fans(&f.raw_rays()).unwrap();
        let secs = started.elapsed().as_secs_f64();
        c.check(report.fans.len() == 1, || format!("{params:?}: {} smooth complete fans", report.fans.len()));
        c.check(report.keys() == vec![f.canonical_key()], || format!("{params:?}: enumerated fan is not the catalog fan"));
        c.check(secs < 60.0, || format!("{params:?}: enumeration took {secs:.1} s"));
    }
    let f = build(CatalogId::Z13pp, &[2, 7, 4, 2]);
    let res = projectivize(&f, &SearchOptions::new(2)).unwrap();
    c.check(res.found && projective(&res.final_fan) && oracle_projective(&res.final_fan), || {
        "search did not end at a projective fan".into()
    });
    c.check(!res.final_smooth && !res.final_fan.is_smooth(), || "search ended at a smooth fan".into());
    let kinds: Vec<SurgeryKind> = res.steps.iter().map(|s| s.classification.kind).collect();
    c.check(kinds == [SurgeryKind::AntiFlip, SurgeryKind::AntiFlip], || {
        let walls: Vec<String> = res.steps.iter().map(|s| format!("{} <v{},v{}>", s.classification.kind, s.wall[0] + 1, s.wall[1] + 1)).collect();
        format!("expected exactly 2 anti-flip steps, search returned {} [{}]", kinds.len(), walls.join(", "))
    });
    c.check(surgery::flopping_walls(&f).unwrap().is_empty(), || "Z13pp(2,7,4,2) has a flopping wall".into());
    c.check(
        surgery::classify_walls(&f).unwrap().iter().all(|(_, k)| k.kind != SurgeryKind::Flip),
        || "Z13pp(2,7,4,2) has a flipping wall".into(),
    );
}

fn criterion_7(c: &mut Checks) {
    let grid: Vec<(CatalogId, Vec<i64>)> = catalog_grid();
    let fans: Vec<(String, Fan)> = grid.iter().map(|(id, p)| (format!("{id}{p:?}"), build(*id, p))).collect();

    // (a)
    for (name, f) in &fans {
        c.check(f.max_cones().len() == 2 * f.rays().len() - 4, || format!("(a) {name} cone count"));
    }

    // (b)
    for (id, p) in catalog_representatives() {
        let f = build(id, &p);
        for r in 0..f.rays().len() {
            if let Ok(y) = contract_ray(&f, r) {
                let again = star_subdivide(&y, f.ray(r).coords()).unwrap();
                c.check(again.canonical_key() == f.canonical_key(), || format!("(b) {id} contract v{}", r + 1));
            }
        }
        let centres: Vec<(Vec<i64>, Option<Fan>)> = f
            .raw_cones()
            .iter()
            .map(|cone| (sum_of(&f, cone), None))
            .chain(f.walls().unwrap().into_iter().map(|wall| {
                let p = sum_of(&f, &wall.wall_rays);
                let flat = sum_of(&f, &wall.off_rays) == p;
                (p, flat.then(|| surgery::perform_surgery(&f, &wall).unwrap().0))
            }))
            .collect();
        for (p, flopped) in centres {
            let g = star_subdivide(&f, &p).unwrap();
            let back = contract_ray(&g, g.rays().len() - 1).unwrap().canonical_key();
            let ok = back == f.canonical_key() || flopped.is_some_and(|h| h.canonical_key() == back);
            c.check(ok, || format!("(b) {id} blow-up at {p:?} does not blow down"));
        }
    }

    // (c)
    for (name, f) in &fans {
        for (wall, class) in surgery::classify_walls(f).unwrap() {
            if class.kind.is_modifiable() {
                let (g, _) = surgery::perform_surgery(f, &wall).unwrap();
                let (h, back) = surgery::perform_surgery_at(&g, [wall.off_rays[0], wall.off_rays[1]]).unwrap();
                let negated = back.classification.degree == -class.degree.clone();
                c.check(h.canonical_key() == f.canonical_key() && negated, || format!("(c) {name} wall {:?}", wall.wall_rays));
            }
        }
    }

    // (d)
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bases: Vec<Fan> = catalog_representatives().into_iter().map(|(id, p)| build(id, &p)).collect();
    let summaries: Vec<Summary> = bases.iter().map(summary).collect();
    for trial in 0..100 {
        let m = random_unimodular(&mut rng);
        let i = trial % bases.len();
        let g = bases[i].transform(&m).unwrap();
        c.check(summary(&g) == summaries[i], || format!("(d) {} under {m:?}", catalog_representatives()[i].0));
    }

    // (e), (f), (g)
    for (name, f) in &fans {
        let verdict = projectivity::is_projective(f).unwrap();
        c.check(verdict.projective == oracle_projective(f), || format!("(e) {name} solver and oracle disagree"));
        if let Some(ob) = projectivity::effective_ample_obstruction(f).unwrap() {
            c.check(ob.verify(f.rays().len()) && !verdict.projective, || format!("(f) {name}"));
        }
        c.check(certificate_holds(f, &verdict.certificate), || format!("(g) {name} certificate"));
    }
}

fn main() {
    let criteria: [(usize, &str, fn(&mut Checks)); 7] = [
        (1, "W: smooth, three flops, non-projective, flops projective", criterion_1),
        (2, "projective families and their blow-down chains", criterion_2),
        (3, "verdicts on the non-projective family grids", criterion_3),
        (4, "Z12 carries no nontrivial nef divisor", criterion_4),
        (5, "projective model within two flops or anti-flips", criterion_5),
        (6, "unique smooth fan on the Z13pp rays; singular projective model", criterion_6),
        (7, "property suites", criterion_7),
    ];
    let mut failed = 0;
    for (n, title, run) in criteria {
        let started = Instant::now();
        let mut checks = Checks::default();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(&mut checks)));
        if let Err(e) = outcome {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            checks.failures.push(format!("panicked: {}", msg.unwrap_or_default()));
        }
        let secs = started.elapsed().as_secs_f64();
        if checks.failures.is_empty() {
            println!("criterion {n}: PASS  {title} ({} checks, {secs:.1} s)", checks.passed);
        } else {
            failed += 1;
            println!(
                "criterion {n}: FAIL  {title} ({} of {} checks failed, {secs:.1} s)",
                checks.failures.len(),
                checks.passed + checks.failures.len()
            );
            for f in &checks.failures {
                println!("    {f}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
