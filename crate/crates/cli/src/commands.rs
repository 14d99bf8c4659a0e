//! Command dispatch: each command turns a document into a [`Report`].

use compat_lie_core::cohomology::{coboundary_matrix, reduced_slice, slice_cohomology, ComplexSlice};
use compat_lie_core::compat::{adjoint_rep, validate_bracket, validate_pair, validate_rep};
use compat_lie_core::deformation::{
    coboundary_of_operator, coboundary_witness, deformations_equivalent, deformed_pair, equivalence_by_probing,
    is_infinitesimal_deformation, is_nijenhuis, trivial_deformation_from_nijenhuis, DeformationDatum, PROBES,
};
use compat_lie_core::extension::{
    assemble_brackets, check_nine_equations, cocycles_cohomologous, extensions_isomorphic_under, gauge_transform,
    gauge_transform_mc, gauge_transform_series, maurer_cartan_check, ExtensionDatum,
};
use compat_lie_core::linalg::rat;
use compat_lie_core::multilinear::nr_bracket;
use compat_lie_core::poisson::{lie_poisson_rep, reduced_bihamiltonian_dims};
use compat_lie_core::sample::{random_cochain, random_extension_datum, random_pair, random_rep};
use compat_lie_core::{Cochain, CompatiblePair, Error as CoreError, LieBracket, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::document::{Document, ParseError};
use crate::report::{join_rationals, Report, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Abelian,
    Nonabelian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check,
    Cohomology { max_degree: usize, reduced: bool },
    Deform { omega: Option<String>, nijenhuis: Option<String> },
    Extend { mode: Mode, xi: Option<String> },
    Poisson { poly_degree: usize, max_degree: usize },
}

impl Command {
    /// Canonical command line, used as the report echo.
    pub fn echo(&self, file: &str) -> String {
        match self {
            Command::Check => format!("check {file}"),
            Command::Cohomology { max_degree, reduced } => {
                let r = if *reduced { " --reduced" } else { "" };
                format!("cohomology --max-degree {max_degree}{r} {file}")
            }
            Command::Deform { omega, nijenhuis } => {
                let mut s = "deform".to_string();
                if let Some(o) = omega {
                    s += &format!(" --omega {o}");
                }
                if let Some(n) = nijenhuis {
                    s += &format!(" --nijenhuis {n}");
                }
                format!("{s} {file}")
            }
            Command::Extend { mode, xi } => {
                let m = match mode {
                    Mode::Abelian => "abelian",
                    Mode::Nonabelian => "nonabelian",
                };
                let x = xi.as_ref().map(|x| format!(" --xi {x}")).unwrap_or_default();
                format!("extend --mode {m}{x} {file}")
            }
            Command::Poisson { poly_degree, max_degree } => {
                format!("poisson --poly-degree {poly_degree} --max-degree {max_degree} {file}")
            }
        }
    }
}

pub fn run(cmd: &Command, doc: &Document, echo: String) -> Result<Report, CliError> {
    let mut report = Report::new(echo);
    match cmd {
        Command::Check => check(doc, &mut report),
        Command::Cohomology { max_degree, reduced } => cohomology(doc, *max_degree, *reduced, &mut report)?,
        Command::Deform { omega, nijenhuis } => deform(doc, omega.as_deref(), nijenhuis.as_deref(), &mut report)?,
        Command::Extend { mode, xi } => extend(doc, *mode, xi.as_deref(), &mut report)?,
        Command::Poisson { poly_degree, max_degree } => poisson(doc, *poly_degree, *max_degree, &mut report)?,
    }
    Ok(report)
}

fn constants_table(name: &str, brackets: &[(&str, &LieBracket)]) -> Table {
    let mut t = Table::new(name, &["bracket", "i", "j", "k", "coeff"]);
    for (label, b) in brackets {
        for (i, j, k, c) in b.nonzero_constants() {
            t.push(vec![label.to_string(), (i + 1).to_string(), (j + 1).to_string(), (k + 1).to_string(), c.to_string()]);
        }
    }
    t
}

fn cochain_rows(t: &mut Table, label: &str, c: &Cochain) {
    for i in 0..c.source_dim() {
        for j in i + 1..c.source_dim() {
            for (k, v) in c.value(&[i, j]).iter().enumerate() {
                if *v != rat(0) {
                    t.push(vec![label.to_string(), (i + 1).to_string(), (j + 1).to_string(), (k + 1).to_string(), v.to_string()]);
                }
            }
        }
    }
}

fn matrix_rows(t: &mut Table, label: &str, ms: &[Matrix]) {
    for (x, m) in ms.iter().enumerate() {
        for r in 0..m.rows() {
            t.push(vec![label.to_string(), (x + 1).to_string(), (r + 1).to_string(), join_rationals(m.row(r))]);
        }
    }
}

/// Pair verdict; the pair itself when it validates.
fn pair_of(doc: &Document, report: &mut Report) -> Result<Option<CompatiblePair>, CliError> {
    let (pi1, pi2) = (doc.pi1(), doc.pi2());
    let v = validate_pair(&pi1, &pi2)?;
    Ok(report.verdict("compatible pair", &v).then(|| CompatiblePair::new_unchecked(pi1, pi2)))
}

fn check(doc: &Document, report: &mut Report) {
    let (pi1, pi2) = (doc.pi1(), doc.pi2());
    report.verdict("jacobi pi1", &validate_bracket(&pi1));
    report.verdict("jacobi pi2", &validate_bracket(&pi2));
    report.verdict("compatible pair", &validate_pair(&pi1, &pi2).expect("same dimension"));
    if let Some(rep) = doc.rep() {
        let pair = CompatiblePair::new_unchecked(pi1.clone(), pi2.clone());
        report.verdict("representation", &validate_rep(&pair, &rep).expect("parser matched dimensions"));
    }
    if let Some((h1, h2)) = doc.kernel_brackets().filter(|_| doc.hpi1.is_some() || doc.hpi2.is_some()) {
        report.verdict("kernel pair", &validate_pair(&h1, &h2).expect("same dimension"));
    }
    report.tables.push(constants_table("structure constants", &[("pi1", &pi1), ("pi2", &pi2)]));
}

fn degree_cap(doc: &Document, max_degree: usize) -> Result<(), CliError> {
    if max_degree > doc.dim {
        return Err(CliError::Usage(format!(
            "--max-degree {max_degree} exceeds dim g = {}; all cochain spaces beyond it are zero",
            doc.dim
        )));
    }
    Ok(())
}

fn cohomology(doc: &Document, max_degree: usize, reduced: bool, report: &mut Report) -> Result<(), CliError> {
    degree_cap(doc, max_degree)?;
    let Some(pair) = pair_of(doc, report)? else { return Ok(()) };
    let rep = doc.rep().unwrap_or_else(|| adjoint_rep(&pair));
    if !report.verdict("representation", &validate_rep(&pair, &rep)?) {
        return Ok(());
    }
    let slice = |n: usize| -> Result<ComplexSlice, CoreError> {
        if reduced {
            reduced_slice(&pair, &rep, n)
        } else {
            coboundary_matrix(&pair, &rep, n)
        }
    };
    let name = if reduced { "reduced cohomology" } else { "cohomology" };
    let mut dims = Table::new(name, &["degree", "cochains", "cocycles", "coboundaries", "dim"]);
    let mut reps = Table::new("representatives", &["degree", "index", "coordinates"]);
    let mut previous: Option<ComplexSlice> = None;
    for n in 0..=max_degree {
        let current = slice(n)?;
        let g = slice_cohomology(&current, previous.as_ref())?;
        dims.push(vec![
            n.to_string(),
            current.basis.dim().to_string(),
            g.cocycle_dim.to_string(),
            g.coboundary_dim.to_string(),
            g.dim.to_string(),
        ]);
        for (i, v) in g.representatives.vectors().iter().enumerate() {
            reps.push(vec![n.to_string(), (i + 1).to_string(), join_rationals(v)]);
        }
        previous = Some(current);
    }
    report.tables.push(dims);
    report.tables.push(reps);
    Ok(())
}

fn named_cochain(doc: &Document, name: &str, target_dim: usize) -> Result<Cochain, CliError> {
    let c = doc
        .cochain(name)
        .ok_or_else(|| CliError::Usage(format!("no [cochain {name}] in the document")))?;
    if c.target_dim() != target_dim {
        return Err(CliError::Usage(format!(
            "cochain {name} has target_dim {}, expected {target_dim}",
            c.target_dim()
        )));
    }
    Ok(c)
}

fn named_op(doc: &Document, name: &str, rows: usize, cols: usize) -> Result<Matrix, CliError> {
    let m = doc
        .op(name)
        .ok_or_else(|| CliError::Usage(format!("no [op {name}] in the document")))?;
    if m.rows() != rows || m.cols() != cols {
        return Err(CliError::Usage(format!(
            "operator {name} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.clone())
}

fn deform(doc: &Document, omega: Option<&str>, nijenhuis: Option<&str>, report: &mut Report) -> Result<(), CliError> {
    if omega.is_none() && nijenhuis.is_none() {
        return Err(CliError::Usage("deform needs --omega and/or --nijenhuis".into()));
    }
    let n = doc.dim;
    let datum = omega
        .map(|o| {
            let (a, b) = o.split_once(',').map_or((o, None), |(a, b)| (a, Some(b)));
            let w1 = named_cochain(doc, a, n)?;
            let w2 = b.map_or_else(|| Ok(Cochain::zero(2, n, n)), |b| named_cochain(doc, b, n))?;
            Ok::<_, CliError>(DeformationDatum::new(w1, w2)?)
        })
        .transpose()?;
    let op = nijenhuis.map(|name| named_op(doc, name, n, n)).transpose()?;
    let Some(pair) = pair_of(doc, report)? else { return Ok(()) };
    let mut table = Table::new("deformation", &["component", "i", "j", "k", "coeff"]);
    if let Some(d) = &datum {
        if report.verdict("infinitesimal deformation", &is_infinitesimal_deformation(&pair, d)?) {
            for t in PROBES {
                report.flag(&format!("deformed pair at t={t}"), deformed_pair(&pair, d, &rat(t)).is_ok());
            }
            let zero = DeformationDatum::zero(n);
            let mut class = Table::new("deformation class", &["trivial", "certificate row", "entries"]);
            match coboundary_witness(&pair, d, &zero)? {
                None => class.push(vec!["no".into(), "-".into(), "-".into()]),
                Some(cert) => {
                    for r in 0..cert.rows() {
                        class.push(vec!["yes".into(), (r + 1).to_string(), join_rationals(cert.row(r))]);
                    }
                }
            }
            report.tables.push(class);
        }
    }
    if let Some(op) = &op {
        if report.verdict("nijenhuis", &is_nijenhuis(&pair, op)?) {
            let d = trivial_deformation_from_nijenhuis(&pair, op)?;
            report.verdict("trivial deformation", &is_infinitesimal_deformation(&pair, &d)?);
            report.flag("trivial deformation is the coboundary", d == coboundary_of_operator(&pair, op)?);
            for t in PROBES {
                report.flag(&format!("nijenhuis deformed pair at t={t}"), deformed_pair(&pair, &d, &rat(t)).is_ok());
            }
            cochain_rows(&mut table, "omega1", d.omega1());
            cochain_rows(&mut table, "omega2", d.omega2());
            if let Some(w) = &datum {
                let zero = DeformationDatum::zero(n);
                report.verdict("equivalent to zero under Id+tN", &deformations_equivalent(&pair, w, &zero, op)?);
                report.verdict("equivalence by probing", &equivalence_by_probing(&pair, w, &zero, op)?);
            }
        }
    }
    if !table.rows.is_empty() {
        report.tables.push(table);
    }
    Ok(())
}

fn datum_table(name: &str, d: &ExtensionDatum) -> Table {
    let mut t = Table::new(name, &["part", "x", "row", "entries"]);
    matrix_rows(&mut t, "rho", d.rho());
    matrix_rows(&mut t, "mu", d.mu());
    for (label, w) in [("omega1", d.omega1()), ("omega2", d.omega2())] {
        for i in 0..d.g_dim() {
            for j in i + 1..d.g_dim() {
                t.push(vec![label.to_string(), format!("{} {}", i + 1, j + 1), "-".into(), join_rationals(w.value(&[i, j]))]);
            }
        }
    }
    t
}

fn extend(doc: &Document, mode: Mode, xi: Option<&str>, report: &mut Report) -> Result<(), CliError> {
    let rep = doc
        .rep()
        .ok_or_else(|| CliError::Usage("extend needs a [rep] section for the kernel action".into()))?;
    let (n, m) = (doc.dim, rep.module_dim());
    if mode == Mode::Abelian && (doc.hpi1.is_some() || doc.hpi2.is_some()) {
        return Err(CliError::Usage("abelian mode takes no [hpi1]/[hpi2] sections".into()));
    }
    let omega = |name: &str| {
        if doc.cochain(name).is_some() {
            named_cochain(doc, name, m)
        } else {
            Ok(Cochain::zero(2, n, m))
        }
    };
    let (w1, w2) = (omega("omega1")?, omega("omega2")?);
    let xi = xi.map(|name| named_op(doc, name, m, n)).transpose()?;
    let Some(g) = pair_of(doc, report)? else { return Ok(()) };
    let datum = match mode {
        Mode::Abelian => {
            if !report.verdict("representation", &validate_rep(&g, &rep)?) {
                return Ok(());
            }
            ExtensionDatum::abelian(g.clone(), &rep, w1, w2)?
        }
        Mode::Nonabelian => {
            let (h1, h2) = doc.kernel_brackets().expect("rep present");
            if !report.verdict("kernel pair", &validate_pair(&h1, &h2)?) {
                return Ok(());
            }
            let h = CompatiblePair::new_unchecked(h1, h2);
            ExtensionDatum::new(g.clone(), h, rep.rho().to_vec(), rep.mu().to_vec(), w1, w2)?
        }
    };
    let nine = report.verdict("nine equations", &check_nine_equations(&datum));
    report.verdict("maurer-cartan", &maurer_cartan_check(&datum));
    let (b1, b2) = assemble_brackets(&datum);
    report.verdict("assembled pair", &validate_pair(&b1, &b2)?);
    if !nine {
        return Ok(());
    }
    report.tables.push(constants_table("extension", &[("pi1", &b1), ("pi2", &b2)]));
    if let Some(xi) = xi {
        let t = gauge_transform(&datum, &xi)?;
        report.flag("lifted gauge action agrees", gauge_transform_mc(&datum, &xi)? == t);
        report.flag("gauge series agrees", gauge_transform_series(&datum, &xi, 4)? == t);
        report.verdict("isomorphic under xi", &extensions_isomorphic_under(&datum, &t, &xi)?);
        if mode == Mode::Abelian {
            let phi = cocycles_cohomologous(&g, &rep, (datum.omega1(), datum.omega2()), (t.omega1(), t.omega2()))?;
            report.flag("cocycles cohomologous", phi.is_some());
            if let Some(phi) = phi {
                let mut c = Table::new("cohomology certificate", &["row", "entries"]);
                for r in 0..phi.rows() {
                    c.push(vec![(r + 1).to_string(), join_rationals(phi.row(r))]);
                }
                report.tables.push(c);
            }
        }
        report.tables.push(datum_table("gauge transformed datum", &t));
    }
    Ok(())
}

fn poisson(doc: &Document, poly_degree: usize, max_degree: usize, report: &mut Report) -> Result<(), CliError> {
    degree_cap(doc, max_degree)?;
    let Some(pair) = pair_of(doc, report)? else { return Ok(()) };
    let poly = lie_poisson_rep(&pair, poly_degree);
    report.verdict("lie-poisson representation", &validate_rep(&pair, poly.rep())?);
    report.flag("degree preserving", poly.is_degree_preserving());
    let mut cols: Vec<String> = vec!["poly degree".into(), "block dim".into()];
    cols.extend((0..=max_degree).map(|k| format!("H{k}")));
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut t = Table::new("reduced cohomology by polynomial degree", &col_refs);
    for (d, row) in reduced_bihamiltonian_dims(&pair, poly_degree, max_degree)?.into_iter().enumerate() {
        let mut r = vec![d.to_string(), poly.basis().degree_range(d).len().to_string()];
        r.extend(row.iter().map(ToString::to_string));
        t.push(r);
    }
    report.tables.push(t);
    Ok(())
}

/// Randomized identity checks from a seed.
pub fn run_property(seed: u64, count: usize) -> Result<Report, CliError> {
    let mut report = Report::new(format!("property --seed {seed} --count {count}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = Table::new("property checks", &["property", "instances", "passed"]);
    let mut tally = |name: &str, results: Vec<bool>, report: &mut Report| {
        let passed = results.iter().filter(|&&b| b).count();
        table.push(vec![name.into(), results.len().to_string(), passed.to_string()]);
        report.flag(name, passed == results.len());
    };
    let mut squares = Vec::new();
    let mut anti = Vec::new();
    let mut ext = Vec::new();
    for _ in 0..count {
        let dim = rng.gen_range(2..=3);
        let pair = random_pair(&mut rng, dim);
        let rep = random_rep(&mut rng, &pair, 2);
        let mut ok = true;
        for k in 0..2 {
            let a = coboundary_matrix(&pair, &rep, k)?;
            let b = coboundary_matrix(&pair, &rep, k + 1)?;
            ok &= b.coboundary_matrix.mul(&a.restricted()).is_zero();
        }
        squares.push(ok);
        let (ap, aq) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let p = random_cochain(&mut rng, ap, dim, dim);
        let q = random_cochain(&mut rng, aq, dim, dim);
        let sign = if (ap - 1) * (aq - 1) % 2 == 0 { -1 } else { 1 };
        anti.push(nr_bracket(&p, &q)? == nr_bracket(&q, &p)?.scale(&rat(sign)));
        let d = random_extension_datum(&mut rng, 3);
        let (b1, b2) = assemble_brackets(&d);
        ext.push(check_nine_equations(&d).is_ok() == validate_pair(&b1, &b2)?.is_ok());
    }
    tally("coboundary squares to zero", squares, &mut report);
    tally("nr graded antisymmetry", anti, &mut report);
    tally("nine equations match assembled pair", ext, &mut report);
    report.tables.push(table);
    Ok(report)
}
