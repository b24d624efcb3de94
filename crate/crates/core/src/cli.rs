//! Batch command-line front end. `run` does all the work and returns the
//! exit code with the text to print, so it can be driven in-process.
//!
//! Exit codes: 0 every asserted verdict holds, 1 some verdict is refuted,
//! 2 usage or input error.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::charsum::{self, CycMatrix};
use crate::families::{self, FamilySpec};
use crate::ffield::FieldTable;
use crate::gauss2;
use crate::report::{RunReport, SchemeChecks, TensorSummary};
use crate::scheme::{
    self, bm_check, intersection_numbers, is_association_scheme, is_pseudocyclic, srg_check,
    two_design_check, SchemeFile, TranslationScheme, DESIGN_MAX_ORDER,
};
use crate::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "cycfusion",
    version,
    about = "Fusion schemes of cyclotomic association schemes"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached field tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Target {
    /// `A:p,p1,p2` or `B:p,p1`.
    #[arg(long, conflicts_with_all = ["scheme_file", "p"])]
    pub family: Option<String>,
    #[arg(long, default_value_t = 1, requires = "family")]
    pub m: u32,
    #[arg(long, conflicts_with = "p")]
    pub scheme_file: Option<PathBuf>,
    /// Characteristic of a plain cyclotomic scheme.
    #[arg(long, requires_all = ["f", "base_n"])]
    pub p: Option<u64>,
    #[arg(long)]
    pub f: Option<u64>,
    #[arg(long = "base-N", id = "base_n")]
    pub base_n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a family member or a scheme and report every verdict.
    Verify(Target),
    /// Search for parameters meeting the strong regularity conditions.
    Search {
        #[arg(long, default_value_t = 50)]
        p_max: u64,
        #[arg(long, default_value_t = 600)]
        p1_max: u64,
        #[arg(long, default_value_t = 25)]
        p2_max: u64,
    },
    /// Emit a first eigenmatrix, fused when a family or scheme file is given.
    Eigenmatrix(Target),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Resolved {
    Family(FamilySpec),
    Scheme(TranslationScheme),
}

fn resolve(t: &Target, cache: Option<&std::path::Path>) -> Result<Resolved, String> {
    if let Some(id) = &t.family {
        return FamilySpec::parse_id(id, t.m)
            .map(Resolved::Family)
            .map_err(|e| e.to_string());
    }
    let scheme = if let Some(path) = &t.scheme_file {
        SchemeFile::read(path).and_then(|f| f.instantiate(cache))
    } else if let (Some(p), Some(f), Some(n)) = (t.p, t.f, t.base_n) {
        FieldTable::build_cached(p, f, cache)
            .map_err(Into::into)
            .and_then(|field| TranslationScheme::cyclotomic(Arc::new(field), n))
    } else {
        return Err("give --family, --scheme-file, or --p/--f/--base-N".into());
    };
    scheme.map(Resolved::Scheme).map_err(|e| e.to_string())
}

fn matrix_strings(m: &CycMatrix) -> Vec<Vec<String>> {
    m.rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn field_for(fam: &FamilySpec, cache: Option<&std::path::Path>) -> Result<Arc<FieldTable>, Error> {
    Ok(Arc::new(fam.field(cache)?))
}

/// The report `verify --family` prints, for callers that bypass argument
/// parsing.
pub fn family_report(
    fam: &FamilySpec,
    cache: Option<&std::path::Path>,
) -> Result<RunReport, Error> {
    let mut report = RunReport::new(vec![
        "verify".into(),
        format!("--family={}", fam.id()),
        format!("--m={}", fam.m),
    ]);
    verify_family(fam, cache, &mut report)?;
    Ok(report)
}

fn verify_family(
    fam: &FamilySpec,
    cache: Option<&std::path::Path>,
    report: &mut RunReport,
) -> Result<(), Error> {
    report.family = Some(fam.to_string());
    let field = field_for(fam, cache)?;
    let fusion = families::verify_fusion_theorem(fam, field.clone())?;
    report.assert("bm_fusion", fusion.bm.fusion);
    report.assert("dual_partition", fusion.bm.delta_matches);
    report.assert(
        "fused_matrix_matches_char_table",
        fusion.bm.fused_matches_char_table,
    );
    report.assert("association_scheme", fusion.association_scheme.holds);
    report.assert("pseudocyclic", fusion.pseudocyclic.holds);
    report.assert("t_formula_one_conjugate", fusion.t_formula.holds());
    report.assert(
        "group_ring_identity",
        fusion.group_ring.n == fusion.q - 1
            && fusion.group_ring.lambda == Some(fusion.expected_lambda()),
    );

    let scheme = fam.build_partition(field.clone())?;
    let condition = families::srg_condition(fam, &fusion.coeffs);
    for part in scheme.parts() {
        report.srg.push(srg_check(&field, scheme.base_n(), part)?);
    }
    report.assert(
        "srg_per_class_agrees_with_condition",
        report.srg.iter().all(|o| o.strongly_regular == condition),
    );
    let amorphic = scheme::amorphy_check(fam.p, fusion.n)?;
    report.amorphic = Some(amorphic);
    report.assert("base_not_amorphic", !amorphic);

    let gauss = gauss2::eval_index2(fam.p, fusion.n)
        .and_then(|sg| gauss2::cross_check(&sg, &field, fusion.n as u32));
    report.assert("gauss_sum_cross_check", gauss.is_ok());
    report.fusion = Some(fusion);
    Ok(())
}

fn verify_scheme(s: &TranslationScheme, report: &mut RunReport) -> Result<(), Error> {
    let field = s.field();
    report.scheme = Some(format!(
        "GF({}^{}) base N = {}, d = {}",
        field.p(),
        field.f(),
        s.base_n(),
        s.d()
    ));
    let base = s.base_eigenmatrix()?;
    let lambda: Vec<Vec<usize>> = std::iter::once(vec![0])
        .chain(
            s.parts()
                .iter()
                .map(|part| part.iter().map(|&c| c as usize + 1).collect()),
        )
        .collect();
    let bm_fusion = bm_check(&base, &lambda)?.is_fusion();
    let tensor = intersection_numbers(s)?;
    let association_scheme = is_association_scheme(&tensor);
    let pseudocyclic = is_pseudocyclic(&tensor);
    let design = if field.q() as u64 <= DESIGN_MAX_ORDER {
        Some(two_design_check(s)?)
    } else {
        None
    };
    let group_ring = families::group_ring_identity(s)?;
    for part in s.parts() {
        report.srg.push(srg_check(field, s.base_n(), part)?);
    }
    report.amorphic = Some(scheme::amorphy_check(field.p() as u64, s.base_n() as u64)?);

    report.assert("bm_fusion", bm_fusion);
    report.assert("association_scheme", association_scheme.holds);
    report.assert(
        "bm_agrees_with_tensor",
        bm_fusion == association_scheme.holds,
    );
    if let Some(d) = &design {
        report.assert(
            "design_agrees_with_pseudocyclic",
            d.holds == pseudocyclic.holds,
        );
    }
    report.scheme_checks = Some(SchemeChecks {
        q: field.q() as u64,
        base_n: s.base_n(),
        d: s.d(),
        bm_fusion,
        association_scheme,
        pseudocyclic,
        tensor: TensorSummary {
            d: tensor.d,
            valencies: tensor.valencies.clone(),
            representatives_checked: tensor.representatives_checked,
            well_defined: tensor.well_defined(),
        },
        design,
        group_ring_lambda: group_ring.lambda,
    });
    Ok(())
}

fn eigenmatrix(
    target: Resolved,
    cache: Option<&std::path::Path>,
    report: &mut RunReport,
) -> Result<(), Error> {
    let (scheme, lambda) = match target {
        Resolved::Family(fam) => {
            report.family = Some(fam.to_string());
            let scheme = fam.build_partition(field_for(&fam, cache)?)?;
            (scheme, Some(fam.lambda()?))
        }
        Resolved::Scheme(s) => {
            let identity = s.parts().iter().all(|p| p.len() == 1);
            let lambda = (!identity).then(|| {
                std::iter::once(vec![0])
                    .chain(
                        s.parts()
                            .iter()
                            .map(|p| p.iter().map(|&c| c as usize + 1).collect()),
                    )
                    .collect()
            });
            (s, lambda)
        }
    };
    let mut matrix = charsum::eigenmatrix_cyclotomic(scheme.field(), scheme.base_n())?;
    if let Some(lambda) = lambda {
        match bm_check(&matrix, &lambda)? {
            scheme::BmOutcome::Fusion(f) => matrix = f.matrix,
            scheme::BmOutcome::Refuted(_) => {
                report.assert("bm_fusion", false);
                return Ok(());
            }
        }
        report.assert("bm_fusion", true);
    }
    report.eigenmatrix = Some(matrix_strings(&matrix));
    Ok(())
}

fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let mut out = String::new();
            if let Some(m) = &report.eigenmatrix {
                for row in m {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            } else if let Some(hits) = &report.search {
                out.push_str("case,p,p1,p2,tag,b,c_abs,h\n");
                for h in hits {
                    let r = &h.record;
                    out.push_str(&format!(
                        "{:?},{},{},{},{},{},{},{}\n",
                        r.case,
                        r.p,
                        r.p1,
                        r.p2.map_or(String::new(), |x| x.to_string()),
                        r.tag,
                        h.coeffs.b,
                        h.coeffs.c_abs,
                        h.coeffs.h
                    ));
                }
            } else {
                out.push_str("verdict,holds\n");
                for (k, v) in &report.verdicts {
                    out.push_str(&format!("{k},{v}\n"));
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            if let Some(f) = &report.family {
                out.push_str(&format!("family {f}\n"));
            }
            if let Some(s) = &report.scheme {
                out.push_str(&format!("scheme {s}\n"));
            }
            if let Some(f) = &report.fusion {
                out.push_str(&format!(
                    "q = {}, N = {}, d = {}, k = {}, b = {}, |c| = {}, h = {}\n",
                    f.q, f.n, f.d, f.valencies[1], f.coeffs.b, f.coeffs.c_abs, f.coeffs.h
                ));
            }
            if let Some(o) = report.srg.first() {
                if let (Some(p), Some((r, t))) = (o.params, o.eigenvalues) {
                    out.push_str(&format!(
                        "class 1 srg ({}, {}, {}, {}) eigenvalues {r}, {t}\n",
                        p.v, p.k, p.lambda, p.mu
                    ));
                }
            }
            if let Some(m) = &report.eigenmatrix {
                let width = m.iter().flatten().map(|s| s.len()).max().unwrap_or(0);
                for row in m {
                    let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
                    out.push_str(&cells.join(" "));
                    out.push('\n');
                }
            }
            if let Some(hits) = &report.search {
                for h in hits {
                    out.push_str(&h.record.to_line());
                    out.push('\n');
                }
            }
            for (k, v) in &report.verdicts {
                out.push_str(&format!("{k}: {}\n", if *v { "pass" } else { "FAIL" }));
            }
            if let Some(ms) = report.elapsed_ms {
                out.push_str(&format!("elapsed {ms} ms\n"));
            }
            out
        }
    }
}

fn command_echo(cmd: &Command) -> Vec<String> {
    let target = |name: &str, t: &Target| {
        let mut v = vec![name.to_string()];
        if let Some(f) = &t.family {
            v.extend([format!("--family={f}"), format!("--m={}", t.m)]);
        }
        if let Some(p) = &t.scheme_file {
            v.push(format!("--scheme-file={}", p.display()));
        }
        if let (Some(p), Some(f), Some(n)) = (t.p, t.f, t.base_n) {
            v.extend([
                format!("--p={p}"),
                format!("--f={f}"),
                format!("--base-N={n}"),
            ]);
        }
        v
    };
    match cmd {
        Command::Verify(t) => target("verify", t),
        Command::Eigenmatrix(t) => target("eigenmatrix", t),
        Command::Search {
            p_max,
            p1_max,
            p2_max,
        } => vec![
            "search".into(),
            format!("--p-max={p_max}"),
            format!("--p1-max={p1_max}"),
            format!("--p2-max={p2_max}"),
        ],
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    if let Some(k) = cli.threads {
        // fails only if the pool already exists, e.g. on a second in-process run
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    let start = Instant::now();
    let cache = cli.cache_dir.as_deref();
    let mut report = RunReport::new(command_echo(&cli.command));
    let result: Result<(), String> = match &cli.command {
        Command::Verify(t) => resolve(t, cache).and_then(|r| {
            match r {
                Resolved::Family(fam) => verify_family(&fam, cache, &mut report),
                Resolved::Scheme(s) => verify_scheme(&s, &mut report),
            }
            .map_err(|e| e.to_string())
        }),
        Command::Eigenmatrix(t) => resolve(t, cache)
            .and_then(|r| eigenmatrix(r, cache, &mut report).map_err(|e| e.to_string())),
        Command::Search {
            p_max,
            p1_max,
            p2_max,
        } => {
            report.search = Some(families::search(*p_max, *p1_max, *p2_max));
            Ok(())
        }
    };
    if let Err(msg) = result {
        return Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        };
    }
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let code = if report.passed {
        EXIT_PASS
    } else {
        EXIT_REFUTED
    };
    let stderr = if report.passed {
        String::new()
    } else {
        let failed: Vec<&str> = report
            .verdicts
            .iter()
            .filter(|(_, v)| !**v)
            .map(|(k, _)| k.as_str())
            .collect();
        format!("refuted: {}\n", failed.join(", "))
    };
    Outcome {
        code,
        stdout: render(&report, cli.format),
        stderr,
    }
}
