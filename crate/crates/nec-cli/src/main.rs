//! Command-line front end: signature validation, (co)homology tables,
//! abelianizations, Fuchsian ring structure and cup products, L2
//! invariants, and the oracle-backed verification suite.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nec_core::checks::{run_checks, SignatureReport};
use nec_core::cohomology::{
    self, modes_expected_to_disagree, CohomologyMode, TableKind, DEFAULT_Q_MAX,
};
use nec_core::oracle;
use nec_core::presentation;
use nec_core::ring::ring_structure;
use nec_core::signature::Signature;
use nec_core::{l2, FinAbGroup};

#[derive(Parser)]
#[command(
    name = "nec",
    about = "Cohomology, ring structure and L2-invariants of NEC groups",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    ProofDerived,
    AsPrinted,
}

impl From<ModeArg> for CohomologyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::ProofDerived => CohomologyMode::ProofDerived,
            ModeArg::AsPrinted => CohomologyMode::AsPrinted,
        }
    }
}

#[derive(Args)]
struct SigArg {
    /// Signature, e.g. "(0,0,+,[2,3,7],{})" or "[1,1;2]".
    signature: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a signature is well-formed and hyperbolic.
    Validate(SigArg),
    /// Print the (co)homology groups in degrees 0..=qmax.
    Table {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, default_value_t = DEFAULT_Q_MAX)]
        qmax: usize,
        /// Print homology instead of cohomology.
        #[arg(long)]
        homology: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::ProofDerived)]
        mode: ModeArg,
    },
    /// Presentation and abelianization of the group.
    Abelianization(SigArg),
    /// Ring decomposition of the cohomology (Fuchsian signatures).
    Ring(SigArg),
    /// Cup product of two elements, e.g. `cup "[0,0;2,3,7]" s3:y s3:y`.
    Cup {
        #[command(flatten)]
        sig: SigArg,
        left: String,
        right: String,
    },
    /// Rational Euler characteristic and L2-Betti numbers.
    L2(SigArg),
    /// Run every oracle cross-check against the closed forms.
    Check {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, default_value_t = DEFAULT_Q_MAX)]
        qmax: usize,
        /// Include the cell-complex diagnostic dump in the report.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Run the checks over a file of signatures, one per line.
    Corpus {
        file: String,
        #[arg(long, default_value_t = DEFAULT_Q_MAX)]
        qmax: usize,
    },
    /// Dump the fundamental-domain cell complex as JSON.
    Complex(SigArg),
}

struct Report {
    signature: String,
    command: &'static str,
    results: Value,
    warnings: Vec<String>,
    checks: Vec<nec_core::checks::CheckReport>,
    text: String,
}

impl Report {
    fn new(signature: &str, command: &'static str) -> Self {
        Report {
            signature: signature.to_string(),
            command,
            results: Value::Null,
            warnings: Vec::new(),
            checks: Vec::new(),
            text: String::new(),
        }
    }

    fn print(&self, format: Format) {
        match format {
            Format::Text => {
                print!("{}", self.text);
                for w in &self.warnings {
                    println!("warning: {w}");
                }
            }
            Format::Json => {
                let checks: Vec<Value> = self
                    .checks
                    .iter()
                    .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                    .collect();
                let out = json!({
                    "signature": self.signature,
                    "command": self.command,
                    "results": self.results,
                    "warnings": self.warnings,
                    "checks": checks,
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            }
        }
    }
}

fn fail(report: &mut Report, format: Format, message: String) -> ExitCode {
    report.results = json!({ "error": message });
    report.text = format!("error: {message}\n");
    report.print(format);
    ExitCode::from(1)
}

fn group_json(g: &FinAbGroup) -> Value {
    g.to_json()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match cli.command {
        Command::Validate(arg) => {
            let mut report = Report::new(&arg.signature, "validate");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match sig.validate() {
                Ok(()) => {
                    let mu = sig.hyperbolic_measure();
                    report.results = json!({"valid": true, "mu": mu.to_string()});
                    report.text =
                        format!("valid: {} with measure mu = {}\n", sig, mu);
                    report.print(format);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&mut report, format, e.to_string()),
            }
        }
        Command::Table { sig: arg, qmax, homology, mode } => {
            let mut report = Report::new(&arg.signature, "table");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let mode: CohomologyMode = mode.into();
            let table = if homology {
                cohomology::homology_table(&sig, qmax)
            } else {
                cohomology::cohomology_table(&sig, qmax, mode)
            };
            let table = match table {
                Ok(t) => t,
                Err(e) => return fail(&mut report, format, e.to_string()),
            };
            let disagreements: Vec<String> = (0..=qmax)
                .filter(|&q| modes_expected_to_disagree(&sig, q))
                .map(|q| q.to_string())
                .collect();
            if !disagreements.is_empty() {
                report.warnings.push(format!(
                    "the two cohomology modes disagree at q = {} (by Z_2^C_E); \
                     see --mode to compare",
                    disagreements.join(", ")
                ));
            }
            let name = match table.kind {
                TableKind::Homology => "H_",
                TableKind::Cohomology => "H^",
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for (q, g) in table.entries.iter().enumerate() {
                text.push_str(&format!("{name}{q} = {g}\n"));
                rows.push(json!({"q": q, "group": group_json(g), "display": g.to_string()}));
            }
            report.results = json!({
                "kind": if homology { "homology" } else { "cohomology" },
                "mode": if homology { Value::Null } else {
                    json!(match mode {
                        CohomologyMode::ProofDerived => "proof-derived",
                        CohomologyMode::AsPrinted => "as-printed",
                    })
                },
                "qmax": qmax,
                "groups": rows,
            });
            report.text = text;
            report.print(format);
            ExitCode::SUCCESS
        }
        Command::Abelianization(arg) => {
            let mut report = Report::new(&arg.signature, "abelianization");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let pres = match presentation::build_presentation(&sig) {
                Ok(p) => p,
                Err(e) => return fail(&mut report, format, e.to_string()),
            };
            let ab = presentation::abelianization(&sig).expect("validated above");
            report.results = json!({
                "presentation": pres.to_json(),
                "group": group_json(&ab),
                "display": ab.to_string(),
            });
            report.text = format!("{pres}\nabelianization: {ab}\n");
            report.print(format);
            ExitCode::SUCCESS
        }
        Command::Ring(arg) => {
            let mut report = Report::new(&arg.signature, "ring");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match ring_structure(&sig) {
                Ok(ring) => {
                    let mut text = format!("{ring}\n");
                    for (i, s) in ring.summands.iter().enumerate() {
                        text.push_str(&format!("  s{i}: {}\n", summand_line(s)));
                    }
                    report.results = ring.to_json();
                    report.text = text;
                    report.print(format);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&mut report, format, e.to_string()),
            }
        }
        Command::Cup { sig: arg, left, right } => {
            let mut report = Report::new(&arg.signature, "cup");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let ring = match ring_structure(&sig) {
                Ok(r) => r,
                Err(e) => return fail(&mut report, format, e.to_string()),
            };
            let (a, b) = match (ring.parse_element(&left), ring.parse_element(&right)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    return fail(&mut report, format, e.to_string())
                }
            };
            match ring.cup_product(&a, &b) {
                Ok(p) => {
                    report.results = json!({
                        "left": ring.element_json(&a),
                        "right": ring.element_json(&b),
                        "product": ring.element_json(&p),
                        "display": ring.render_element(&p),
                    });
                    report.text = format!(
                        "{} cup {} = {}\n",
                        ring.render_element(&a),
                        ring.render_element(&b),
                        ring.render_element(&p)
                    );
                    report.print(format);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&mut report, format, e.to_string()),
            }
        }
        Command::L2(arg) => {
            let mut report = Report::new(&arg.signature, "l2");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match l2::l2_profile(&sig) {
                Ok(profile) => {
                    report.results = json!({
                        "chi_q": profile.chi_q.to_string(),
                        "beta_1": profile.betti_1.to_string(),
                    });
                    report.text = format!(
                        "chi_Q = {}\nbeta_1^(2) = {} (all other L2-Betti numbers vanish)\n",
                        profile.chi_q, profile.betti_1
                    );
                    report.print(format);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&mut report, format, e.to_string()),
            }
        }
        Command::Check { sig: arg, qmax, dump_complex } => {
            let mut report = Report::new(&arg.signature, "check");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match run_checks(&sig, qmax) {
                Ok(result) => {
                    let ok = result.all_pass();
                    report.text = render_check_text(&result);
                    report.warnings = result.warnings.clone();
                    report.checks = result.checks;
                    report.results = json!({"pass": ok, "qmax": qmax});
                    if dump_complex {
                        let complex =
                            oracle::build_cell_complex(&sig).expect("validated");
                        report.results["complex"] = complex.to_json();
                        if format == Format::Text {
                            report.text.push_str(&format!(
                                "complex: {}\n",
                                serde_json::to_string(&complex.to_json())
                                    .expect("serializable")
                            ));
                        }
                    }
                    report.print(format);
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(3)
                    }
                }
                Err(e) => fail(&mut report, format, e.to_string()),
            }
        }
        Command::Corpus { file, qmax } => {
            let mut report = Report::new(&file, "corpus");
            let content = match std::fs::read_to_string(&file) {
                Ok(c) => c,
                Err(e) => return fail(&mut report, format, format!("cannot read {file}: {e}")),
            };
            let mut sigs = Vec::new();
            for (lineno, line) in content.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                match Signature::parse(line) {
                    Ok(s) => match s.validate() {
                        Ok(()) => sigs.push(s),
                        Err(e) => {
                            return fail(
                                &mut report,
                                format,
                                format!("line {}: {e}", lineno + 1),
                            )
                        }
                    },
                    Err(e) => {
                        return fail(&mut report, format, format!("line {}: {e}", lineno + 1))
                    }
                }
            }
            let reports = nec_core::corpus::check_corpus(&sigs, qmax);
            let mut all_ok = true;
            let mut rows = Vec::new();
            let mut text = String::new();
            for r in &reports {
                let ok = r.all_pass();
                all_ok &= ok;
                text.push_str(&format!(
                    "{} {} ({} checks, {} warnings)\n",
                    if ok { "PASS" } else { "FAIL" },
                    r.signature,
                    r.checks.len(),
                    r.warnings.len()
                ));
                if !ok {
                    for c in r.checks.iter().filter(|c| !c.pass) {
                        text.push_str(&format!("  {}: {}\n", c.name, c.detail));
                    }
                }
                rows.push(json!({
                    "signature": r.signature.to_string(),
                    "pass": ok,
                    "checks": r.checks.iter().map(|c| {
                        json!({"name": c.name, "pass": c.pass, "detail": c.detail})
                    }).collect::<Vec<_>>(),
                    "warnings": r.warnings,
                }));
            }
            text.push_str(&format!(
                "{}/{} signatures pass\n",
                reports.iter().filter(|r| r.all_pass()).count(),
                reports.len()
            ));
            report.results = json!({"qmax": qmax, "reports": rows});
            report.text = text;
            report.print(format);
            if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Command::Complex(arg) => {
            let mut report = Report::new(&arg.signature, "complex");
            let sig = match parse(&arg.signature, &mut report, format) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match oracle::build_cell_complex(&sig) {
                Ok(complex) => {
                    let dump = complex.to_json();
                    report.text = format!(
                        "{}\n",
                        serde_json::to_string_pretty(&dump).expect("serializable")
                    );
                    report.results = dump;
                    report.print(format);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&mut report, format, e.to_string()),
            }
        }
    }
}

fn parse(text: &str, report: &mut Report, format: Format) -> Result<Signature, ExitCode> {
    Signature::parse(text).map_err(|e| fail(report, format, e.to_string()))
}

fn summand_line(s: &nec_core::ring::RingSummand) -> String {
    use nec_core::ring::RingSummand::*;
    match s {
        Surface { genus } => format!(
            "surface part, genus {genus} (unit, classes a1..a{genus}, b1..b{genus}, f)"
        ),
        TruncatedDegreeOne { n } => {
            format!("degree-one classes x1..x{n} with all products zero (unit)")
        }
        CyclicClass { order } => format!("cyclic classes u^p of order {order} in degrees 2p"),
        RRing { modulus } => {
            format!("classes x (degree 4), y (degree 6), x^3 = y^2, coefficients mod {modulus}")
        }
        FullCyclic { order } => format!("cyclic classes u^p of order {order} in degrees 2p"),
    }
}

fn render_check_text(result: &SignatureReport) -> String {
    let mut text = String::new();
    for c in &result.checks {
        text.push_str(&format!(
            "{} {}: {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    text
}
