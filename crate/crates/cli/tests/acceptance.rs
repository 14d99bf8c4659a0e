//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.
//!
//! Run with `cargo test -p compat-lie --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use compat_lie::{parse, render};
use compat_lie_core::cohomology::{coboundary_matrix, cohomology_dim};
use compat_lie_core::compat::{adjoint_rep, validate_pair, validate_rep};
use compat_lie_core::deformation::{
    coboundary_of_operator, deformed_pair, is_infinitesimal_deformation, trivial_deformation_from_nijenhuis, PROBES,
};
use compat_lie_core::extension::{
    anticommutator_defect, assemble_brackets, build_extension, check_nine_equations, cocycles_cohomologous,
    extract_datum, gauge_transform, maurer_cartan_check, ExtensionDatum, Section,
};
use compat_lie_core::linalg::rat;
use compat_lie_core::multilinear::{binomial, ce_coboundary, ce_coboundary_via_nr, nr_bracket};
use compat_lie_core::poisson::{lie_poisson_rep, reduced_bihamiltonian_dims};
use compat_lie_core::sample::{random_cochain, random_extension_datum, random_nijenhuis, random_pair, random_rep};
use compat_lie_core::{Cochain, CompatiblePair, LieBracket, Matrix, RepPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sign(p: usize, q: usize) -> i64 {
    if (p * q) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn complex_axiom() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut products = 0;
    for case in 0..50 {
        let n = rng.gen_range(2..=4);
        let pair = random_pair(&mut rng, n);
        ensure(validate_pair(pair.pi1(), pair.pi2()).unwrap().is_ok(), || format!("pair {case} invalid"))?;
        let rep = random_rep(&mut rng, &pair, 3);
        ensure(validate_rep(&pair, &rep).unwrap().is_ok(), || format!("rep {case} invalid"))?;
        for (label, r) in [("adjoint", adjoint_rep(&pair)), ("random", rep)] {
            let mut previous = coboundary_matrix(&pair, &r, 0).unwrap();
            for k in 0..=3 {
                let next = coboundary_matrix(&pair, &r, k + 1).unwrap();
                let product = next.coboundary_matrix.mul(&previous.restricted());
                ensure(product.is_zero(), || format!("case {case} ({label} rep, dim {n}): degree {k} product nonzero"))?;
                products += 1;
                previous = next;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {:.1} s, limit 60 s", elapsed.as_secs_f64()))?;
    Ok(format!("{products} products exactly zero in {:.2} s (limit 60 s)", elapsed.as_secs_f64()))
}

fn nr_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let c: Vec<Cochain> = (0..3)
            .map(|_| {
                let a = rng.gen_range(1..=2);
                random_cochain(&mut rng, a, n, n)
            })
            .collect();
        let (p, q, r) = (&c[0], &c[1], &c[2]);
        let (dp, dq) = (p.arity() - 1, q.arity() - 1);
        let pq = nr_bracket(p, q).unwrap();
        let qp = nr_bracket(q, p).unwrap();
        ensure(pq == qp.scale(&rat(-sign(dp, dq))), || format!("antisymmetry fails on triple {case}"))?;
        let lhs = nr_bracket(p, &nr_bracket(q, r).unwrap()).unwrap();
        let rhs = nr_bracket(&pq, r)
            .unwrap()
            .add(&nr_bracket(q, &nr_bracket(p, r).unwrap()).unwrap().scale(&rat(sign(dp, dq))))
            .unwrap();
        ensure(lhs == rhs, || format!("jacobi fails on triple {case}"))?;
    }
    Ok("graded antisymmetry and jacobi exact on 100 triples".into())
}

fn ce_cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for case in 0..50 {
        let n = rng.gen_range(2..=3);
        let pair = random_pair(&mut rng, n);
        let rep = random_rep(&mut rng, &pair, 3);
        let p = rng.gen_range(0..=2);
        let f = random_cochain(&mut rng, p, n, rep.module_dim());
        for (pi, act) in [(pair.pi1(), rep.rho()), (pair.pi2(), rep.mu())] {
            let a = ce_coboundary(pi.cochain(), act, &f).unwrap();
            let b = ce_coboundary_via_nr(pi.cochain(), act, &f).unwrap();
            ensure(a == b, || format!("instance {case}: explicit sum differs from lifted bracket"))?;
        }
    }
    Ok("explicit coboundary equals lifted bracket on 50 instances, both brackets".into())
}

fn closed_form() -> Outcome {
    let mut rows = Vec::new();
    for m in 1..=4 {
        let pair = CompatiblePair::new(LieBracket::abelian(m), LieBracket::abelian(m)).unwrap();
        let rep = RepPair::zero(m, m);
        let h0 = cohomology_dim(&pair, &rep, 0).unwrap().dim;
        ensure(h0 == m, || format!("m={m}: H0 = {h0}, expected {m}"))?;
        let mut dims = vec![h0];
        for n in 1..=m {
            let h = cohomology_dim(&pair, &rep, n).unwrap().dim;
            let want = n * binomial(m, n) * m;
            ensure(h == want, || format!("m={m}: H{n} = {h}, expected {want}"))?;
            dims.push(h);
        }
        rows.push(format!("m={m}: {dims:?}"));
    }
    Ok(rows.join(", "))
}

fn sl2_fixture() -> Outcome {
    let sl2 = LieBracket::from_constants(3, &[(0, 1, 1, rat(2)), (0, 2, 2, rat(-2)), (1, 2, 0, rat(1))]).unwrap();
    let pair = CompatiblePair::new(sl2.clone(), sl2).unwrap();
    let rep = adjoint_rep(&pair);
    let s0 = coboundary_matrix(&pair, &rep, 0).unwrap();
    let s1 = coboundary_matrix(&pair, &rep, 1).unwrap();
    let (m0, m1) = (s0.restricted(), s1.restricted());
    let by_rref = (s0.basis.dim() - m0.rank(), s1.basis.dim() - m1.rank() - m0.rank());
    let by_bareiss = (
        s0.basis.dim() - m0.rank_fraction_free(),
        s1.basis.dim() - m1.rank_fraction_free() - m0.rank_fraction_free(),
    );
    let library = (cohomology_dim(&pair, &rep, 0).unwrap().dim, cohomology_dim(&pair, &rep, 1).unwrap().dim);
    ensure(by_rref == (0, 0) && by_bareiss == (0, 0) && library == (0, 0), || {
        format!("rref {by_rref:?}, fraction-free {by_bareiss:?}, library {library:?}")
    })?;
    Ok("H0 = 0, H1 = 0 by row reduction and by fraction-free elimination".into())
}

fn nijenhuis_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for case in 0..30 {
        let (pair, n) = random_nijenhuis(&mut rng);
        let d = trivial_deformation_from_nijenhuis(&pair, &n).unwrap();
        ensure(is_infinitesimal_deformation(&pair, &d).unwrap().is_ok(), || {
            format!("sample {case}: not an infinitesimal deformation")
        })?;
        ensure(d == coboundary_of_operator(&pair, &n).unwrap(), || format!("sample {case}: differs from the coboundary"))?;
        for t in PROBES {
            ensure(deformed_pair(&pair, &d, &rat(t)).is_ok(), || format!("sample {case}: deformed pair fails at t={t}"))?;
        }
    }
    Ok("30 operators: infinitesimal deformation, equals coboundary, pairs valid at t=1,2,3".into())
}

fn extension_data() -> Vec<ExtensionDatum> {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    (0..50).map(|_| random_extension_datum(&mut rng, 3)).collect()
}

fn nine_equations() -> Outcome {
    let (mut pass, mut fail) = (0, 0);
    for (case, d) in extension_data().iter().enumerate() {
        let nine = check_nine_equations(d).is_ok();
        let (b1, b2) = assemble_brackets(d);
        let direct = validate_pair(&b1, &b2).unwrap().is_ok();
        ensure(nine == direct, || format!("datum {case}: nine equations {nine}, assembled pair {direct}"))?;
        if nine {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    ensure(pass > 0 && fail > 0, || format!("only one direction exercised: {pass} valid, {fail} invalid"))?;
    Ok(format!("agreement on 50 data ({pass} valid, {fail} invalid)"))
}

fn maurer_cartan() -> Outcome {
    let mut identities = 0;
    for (case, d) in extension_data().iter().enumerate() {
        let nine = check_nine_equations(d).is_ok();
        let mc = maurer_cartan_check(d).is_ok();
        ensure(nine == mc, || format!("datum {case}: nine equations {nine}, maurer-cartan {mc}"))?;
        if nine && d.g_dim() + d.h_dim() <= 4 {
            for p in 0..=1 {
                ensure(anticommutator_defect(d, p, true).unwrap().is_zero(), || {
                    format!("datum {case}: twisted anticommutator nonzero in degree {p}")
                })?;
                identities += 1;
            }
        }
    }
    ensure(identities > 0, || "no valid datum small enough for the anticommutator".into())?;
    Ok(format!("agreement on 50 data, {identities} twisted anticommutators exactly zero"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> compat_lie::Document {
    parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn heisenberg() -> Outcome {
    let doc = load("heisenberg.cla");
    let g = CompatiblePair::new(doc.pi1(), doc.pi2()).unwrap();
    let rep = doc.rep().unwrap();
    let (n, m) = (doc.dim, rep.module_dim());
    let w1 = doc.cochain("omega1").unwrap();
    let d = ExtensionDatum::abelian(g.clone(), &rep, w1, Cochain::zero(2, n, m)).unwrap();
    let ext = build_extension(&d).unwrap();
    let heis = LieBracket::from_constants(3, &[(0, 1, 2, rat(1))]).unwrap();
    ensure(ext.pi1() == &heis && ext.pi2().is_abelian(), || "extension is not the Heisenberg pair".into())?;

    let embed = Matrix::from_int_rows(&[&[0], &[0], &[1]]);
    let proj = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0]]);
    let base = Section::new(Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0]]), &proj).unwrap();
    let xi = doc.op("xi").unwrap().clone();
    let shifted = Section::new(Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[1, 0]]), &proj).unwrap();

    let first = extract_datum(&ext, &embed, &proj, &base).unwrap();
    ensure(first == d, || "standard section does not recover the datum".into())?;
    let second = extract_datum(&ext, &embed, &proj, &shifted).unwrap();
    let phi = cocycles_cohomologous(&g, &rep, (first.omega1(), first.omega2()), (second.omega1(), second.omega2()))
        .unwrap()
        .ok_or("section change is not a coboundary")?;
    for (pi, act, a, b) in [
        (g.pi1(), rep.rho(), first.omega1(), second.omega1()),
        (g.pi2(), rep.mu(), first.omega2(), second.omega2()),
    ] {
        let dphi = ce_coboundary(pi.cochain(), act, &Cochain::from_matrix(&phi)).unwrap();
        ensure(dphi == a.sub(b).unwrap(), || "certificate does not reproduce the cocycle difference".into())?;
    }
    let gauged = gauge_transform(&d, &xi).unwrap();
    ensure(gauged == second, || "gauge transform differs from re-extraction under the shifted section".into())?;
    ensure(shifted.matrix().sub(base.matrix()) == Matrix::from_int_rows(&[&[0, 0], &[0, 0], &[1, 0]]), || {
        "shift is not xi".into()
    })?;

    let doc = load("nonabelian.cla");
    let g = CompatiblePair::new(doc.pi1(), doc.pi2()).unwrap();
    let rep = doc.rep().unwrap();
    let (h1, h2) = doc.kernel_brackets().unwrap();
    let d = ExtensionDatum::new(
        g,
        CompatiblePair::new(h1, h2).unwrap(),
        rep.rho().to_vec(),
        rep.mu().to_vec(),
        doc.cochain("omega1").unwrap(),
        Cochain::zero(2, 2, 2),
    )
    .unwrap();
    let ext = build_extension(&d).unwrap();
    let xi = doc.op("xi").unwrap();
    let embed = Matrix::from_fn(4, 2, |r, c| rat((r == c + 2) as i64));
    let proj = Matrix::from_fn(2, 4, |r, c| rat((r == c) as i64));
    let sigma = Section::new(Matrix::from_fn(4, 2, |r, c| if r < 2 { rat((r == c) as i64) } else { xi.get(r - 2, c).clone() }), &proj)
        .unwrap();
    ensure(extract_datum(&ext, &embed, &proj, &sigma).unwrap() == gauge_transform(&d, xi).unwrap(), || {
        "nonabelian fixture: gauge transform differs from re-extraction".into()
    })?;
    Ok(format!("certificate phi = [{}], gauge equals re-extraction (also on the nonabelian fixture)", join(&phi)))
}

fn join(m: &Matrix) -> String {
    m.entries().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn poisson() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut reps = 0;
    for n in 1..=3 {
        for _ in 0..4 {
            let pair = if n == 1 {
                CompatiblePair::new(LieBracket::abelian(1), LieBracket::abelian(1)).unwrap()
            } else {
                random_pair(&mut rng, n)
            };
            let ad = adjoint_rep(&pair);
            for d in 0..=3 {
                let p = lie_poisson_rep(&pair, d);
                ensure(validate_rep(&pair, p.rep()).unwrap().is_ok(), || format!("dim {n}, degree {d}: invalid"))?;
                if d >= 1 {
                    let b = p.block(1);
                    ensure(b.rho() == ad.rho() && b.mu() == ad.mu(), || {
                        format!("dim {n}, degree {d}: linear block differs from the adjoint")
                    })?;
                }
                reps += 1;
            }
        }
    }
    for n in 1..=3 {
        let pair = CompatiblePair::new(LieBracket::abelian(n), LieBracket::abelian(n)).unwrap();
        let table = reduced_bihamiltonian_dims(&pair, 3, n).unwrap();
        for (d, row) in table.iter().enumerate() {
            for (k, dim) in row.iter().enumerate() {
                let want = binomial(n, k) * binomial(n + d - 1, d);
                ensure(*dim == want, || format!("abelian dim {n}, degree {d}, H{k} = {dim}, expected {want}"))?;
            }
        }
    }
    Ok(format!("{reps} polynomial representations valid, linear block equals adjoint, abelian tables full"))
}

fn invocations() -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut names: Vec<String> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    for name in &names {
        let path = fixture(name).display().to_string();
        let doc = load(name);
        let top = doc.dim.min(2).to_string();
        let mut cmds: Vec<Vec<&str>> = vec![
            vec!["check"],
            vec!["cohomology", "--max-degree", &top],
            vec!["cohomology", "--max-degree", &top, "--reduced"],
            vec!["poisson", "--poly-degree", "2", "--max-degree", &top],
        ];
        if doc.rep().is_some() {
            let mode = if doc.hpi1.is_some() { "nonabelian" } else { "abelian" };
            cmds.push(vec!["extend", "--mode", mode]);
            if doc.op("xi").is_some() {
                cmds.push(vec!["extend", "--mode", mode, "--xi", "xi"]);
            }
        }
        if doc.cochain("W").is_some() {
            cmds.push(vec!["deform", "--omega", "W"]);
        }
        if doc.op("N").is_some() {
            cmds.push(vec!["deform", "--nijenhuis", "N"]);
            if doc.cochain("W").is_some() {
                cmds.push(vec!["deform", "--omega", "W", "--nijenhuis", "N"]);
            }
        }
        for c in cmds {
            for format in ["json", "csv"] {
                let mut args: Vec<String> = vec!["--format".into(), format.into()];
                args.extend(c.iter().map(|s| s.to_string()));
                args.push(path.clone());
                out.push(args);
            }
        }
    }
    for format in ["json", "csv"] {
        out.push(["--format", format, "property", "--seed", "11", "--count", "5"].map(String::from).to_vec());
    }
    out
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_compat-lie");
    let runs = invocations();
    for args in &runs {
        let a = Command::new(bin).args(args).output().unwrap();
        let b = Command::new(bin).args(args).output().unwrap();
        ensure(a.status.code() != Some(2), || format!("usage error for {args:?}: {}", String::from_utf8_lossy(&a.stderr)))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("output differs between runs for {args:?}"))?;
    }
    let mut files = 0;
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let doc = parse(&text).unwrap();
        let rendered = render(&doc);
        let again = parse(&rendered).unwrap();
        ensure(again == doc && render(&again) == rendered, || "parse/render round trip differs".into())?;
        files += 1;
    }
    Ok(format!("{} invocations byte-identical across two runs, {files} fixtures round-trip", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("complex axiom, tolerance exact", complex_axiom),
        ("nr bracket algebra, tolerance exact", nr_algebra),
        ("coboundary cross-check, tolerance exact", ce_cross_check),
        ("abelian closed form, tolerance exact", closed_form),
        ("sl2 pair fixture, tolerance exact", sl2_fixture),
        ("nijenhuis pipeline, tolerance exact", nijenhuis_pipeline),
        ("nine equations vs assembled pair, tolerance exact", nine_equations),
        ("maurer-cartan cross-path, tolerance exact", maurer_cartan),
        ("gauge and section coherence, tolerance exact", heisenberg),
        ("lie-poisson representation, tolerance exact", poisson),
        ("cli determinism, byte-identical", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
