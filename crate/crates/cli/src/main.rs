//! `kodaira-lab`: command-line surface for the exact oscillator-group and
//! solvmanifold computations.
//!
//! Exit codes: 0 when the command's verification passes, 1 when a checked
//! property fails, 2 on usage errors. Output is deterministic for fixed
//! inputs; only the JSON `timing_ms` field varies between runs.

use clap::{Args, Parser, Subcommand};
use kodaira_core::fp::{builtin_presentation, distinguish_all, verify_presentation};
use kodaira_core::geometry::{
    builtin_j, closed_two_forms, invariant_symplectic, is_abelian_cs, is_closed_two_form,
    nijenhuis, AlmostComplexStructure,
};
use kodaira_core::lie::{
    self, default_trial_vectors, LieAlgebra, SolvabilityVerdict, BUILTIN_NAMES,
};
use kodaira_core::matrix::RatMatrix;
use kodaira_core::oscillator::{
    classify_product_lattice, commutator_box_check, covering_index, exotic_lattice_check,
    normality_check, Flavor, LatticeId, OscElement,
};
use kodaira_core::rational::{format_rat, parse_rat, Rat};
use kodaira_core::topology::{format_base_cochain, solvmanifold_betti};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;
use std::process::ExitCode;
use std::time::Instant;

const DEFAULT_SEED: u64 = 0x6f73_6369; // stable default for trial vectors
const SEED_ENV: &str = "KODAIRA_LAB_SEED";

#[derive(Parser)]
#[command(
    name = "kodaira-lab",
    version,
    about = "Exact computations for the oscillator group, its lattices, and their solvmanifolds"
)]
struct Cli {
    /// Emit the report as JSON (includes the timing field)
    #[arg(long, global = true)]
    json: bool,
    /// Emit tabular results as CSV
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of Lie algebras and solvmanifolds
    #[command(subcommand)]
    Betti(BettiCmd),
    /// Lattice checks: presentations, center, commutators, coverings,
    /// normality, classification, the exotic example
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Exact group arithmetic on elements given as JSON
    #[command(subcommand)]
    Group(GroupCmd),
    /// Abelianization invariants of the lattice presentations
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Complex and symplectic structure tests
    #[command(subcommand)]
    Geometry(GeometryCmd),
    /// Lie algebra validation, unimodularity, and solvability search
    #[command(subcommand)]
    Lie(LieCmd),
}

#[derive(Subcommand)]
enum BettiCmd {
    /// Chevalley-Eilenberg Betti numbers of a builtin or JSON-file algebra
    Lie { algebra: String },
    /// Betti numbers of the solvmanifold for a lattice
    Solvmanifold {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Print the full three-flavor table
        #[arg(long)]
        table: bool,
    },
}

#[derive(Args)]
struct LatticeArgs {
    /// Heisenberg scale index (z-steps of 1/2k)
    #[arg(long)]
    k: u32,
    /// Angle flavor: 0, pi, or pi2
    #[arg(long)]
    flavor: String,
}

impl LatticeArgs {
    fn resolve(&self) -> Result<LatticeId, UsageError> {
        if self.k == 0 {
            return Err(UsageError("k must be at least 1".into()));
        }
        let flavor = Flavor::parse(&self.flavor).ok_or_else(|| {
            UsageError(format!(
                "unknown flavor `{}` (use 0, pi, pi2)",
                self.flavor
            ))
        })?;
        Ok(LatticeId::new(self.k, flavor))
    }
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Certify the builtin presentation against exact arithmetic
    Verify {
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Exhaustive center check on a coordinate box
    Center {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Exhaustive commutator check for the flavor-0 lattice on a box
    Commutator {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Covering index between nested flavors over the same k
    Index {
        #[arg(long)]
        k: u32,
        /// flavor of the sublattice
        #[arg(long)]
        sub: String,
        /// flavor of the superlattice
        #[arg(long = "super")]
        sup: String,
    },
    /// Normality of the sublattice in the superlattice
    Normal {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        sub: String,
        #[arg(long = "super")]
        sup: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Classify a product lattice (π/2)lZ x qZ x rZ x (qr/2k)Z
    Classify {
        #[arg(long)]
        l: u64,
        /// positive rational, e.g. 2 or 3/2
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        k: u32,
    },
    /// Verify the two-coset exotic lattice and its coordinate embedding
    Exotic {
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Product of two elements
    Mul { a: String, b: String },
    /// Inverse of an element
    Inv { a: String },
    /// Commutator a b a⁻¹ b⁻¹
    Comm { a: String, b: String },
}

#[derive(Subcommand)]
enum InvariantsCmd {
    /// Abelianization of one lattice presentation
    Abelianization {
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Tabulate all abelianizations up to kmax and check pairwise distinctness
    Distinguish {
        #[arg(long)]
        kmax: u32,
    },
}

#[derive(Subcommand)]
enum GeometryCmd {
    /// Nijenhuis tensor of an almost complex structure on all basis pairs
    Nijenhuis {
        #[arg(long)]
        alg: String,
        /// `builtin` or a path to a JSON rational matrix
        #[arg(long, default_value = "builtin")]
        j: String,
    },
    /// The abelian condition [Ju, Jv] = [u, v]
    AbelianCs {
        #[arg(long)]
        alg: String,
        #[arg(long, default_value = "builtin")]
        j: String,
    },
    /// Search for an invariant symplectic form over the closed two-forms
    Symplectic {
        #[arg(long)]
        alg: String,
    },
}

#[derive(Subcommand)]
enum LieCmd {
    /// Jacobi validation; violations are listed, not fatal
    Validate {
        #[arg(long)]
        alg: String,
    },
    /// Unimodularity: vanishing traces of all basis adjoints
    Unimodular {
        #[arg(long)]
        alg: String,
    },
    /// Complete-solvability witness search over seeded trial vectors
    /// (seed from KODAIRA_LAB_SEED when set)
    Solvability {
        #[arg(long)]
        alg: String,
        /// extra pseudo-random trial vectors beyond the basis
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
}

/// Bad input: reported on stderr with exit code 2.
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Everything a command produces; rendering picks text, JSON, or CSV.
struct Outcome {
    command: String,
    inputs: Value,
    results: Value,
    pass: bool,
    text: Vec<String>,
    csv: Option<Vec<String>>,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    inputs: &'a Value,
    results: &'a Value,
    pass: bool,
    timing_ms: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let timing_ms = started.elapsed().as_secs_f64() * 1e3;
    if cli.json {
        let report = Report {
            command: &outcome.command,
            inputs: &outcome.inputs,
            results: &outcome.results,
            pass: outcome.pass,
            timing_ms,
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else if cli.csv {
        match &outcome.csv {
            Some(rows) => {
                for row in rows {
                    println!("{row}");
                }
            }
            None => {
                for line in &outcome.text {
                    println!("{line}");
                }
            }
        }
    } else {
        for line in &outcome.text {
            println!("{line}");
        }
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Betti(cmd) => run_betti(cmd),
        Command::Lattice(cmd) => run_lattice(cmd),
        Command::Group(cmd) => run_group(cmd),
        Command::Invariants(cmd) => run_invariants(cmd),
        Command::Geometry(cmd) => run_geometry(cmd),
        Command::Lie(cmd) => run_lie(cmd),
    }
}

fn resolve_algebra(spec: &str) -> Result<(String, LieAlgebra), UsageError> {
    if let Some(alg) = lie::builtin(spec) {
        return Ok((spec.to_string(), alg));
    }
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read `{spec}`: {e}")))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| UsageError(format!("`{spec}` is not JSON: {e}")))?;
        let alg = LieAlgebra::from_json(&value).map_err(|e| UsageError(e.to_string()))?;
        return Ok((spec.to_string(), alg));
    }
    Err(UsageError(format!(
        "unknown algebra `{spec}`: expected one of {} or a JSON file",
        BUILTIN_NAMES.join(", ")
    )))
}

fn parse_element(text: &str) -> Result<OscElement, UsageError> {
    serde_json::from_str(text).map_err(|e| {
        UsageError(format!(
            "bad element `{text}`: {e} (expected JSON like {{\"q\":0,\"x\":\"1\",\"y\":\"0\",\"z\":\"1/2\"}})"
        ))
    })
}

fn parse_positive_rat(text: &str, name: &str) -> Result<Rat, UsageError> {
    parse_rat(text).map_err(|e| UsageError(format!("bad rational for --{name}: {e}")))
}

fn flavor_arg(text: &str) -> Result<Flavor, UsageError> {
    Flavor::parse(text)
        .ok_or_else(|| UsageError(format!("unknown flavor `{text}` (use 0, pi, pi2)")))
}

fn betti_line(betti: &[usize]) -> String {
    betti
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn betti_csv(betti: &[usize]) -> String {
    betti
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn lattice_json(lattice: LatticeId) -> Value {
    json!({ "k": lattice.k, "flavor": lattice.flavor.to_string() })
}

fn run_betti(cmd: &BettiCmd) -> Result<Outcome, UsageError> {
    match cmd {
        BettiCmd::Lie { algebra } => {
            let (name, alg) = resolve_algebra(algebra)?;
            let violations = alg.validate();
            if !violations.is_empty() {
                return Err(UsageError(format!(
                    "`{name}` violates the Jacobi identity on {} basis triples",
                    violations.len()
                )));
            }
            let betti = alg.betti().map_err(|e| UsageError(e.to_string()))?;
            let header = (0..betti.len())
                .map(|p| format!("b{p}"))
                .collect::<Vec<_>>()
                .join(",");
            Ok(Outcome {
                command: "betti lie".into(),
                inputs: json!({ "algebra": name }),
                results: json!({ "betti": betti }),
                pass: true,
                text: vec![betti_line(&betti)],
                csv: Some(vec![
                    format!("algebra,{header}"),
                    format!("{name},{}", betti_csv(&betti)),
                ]),
            })
        }
        BettiCmd::Solvmanifold { lattice, table } => {
            let id = lattice.resolve()?;
            let betti = solvmanifold_betti(id);
            let mut text = vec![betti_line(&betti)];
            let mut results = json!({
                "lattice": lattice_json(id),
                "betti": betti,
            });
            let mut csv = vec![
                "manifold,b0,b1,b2,b3,b4".to_string(),
                format!("M_{{{},{}}},{}", id.k, id.flavor, betti_csv(&betti)),
            ];
            if *table {
                let mut rows = Vec::new();
                csv = vec!["manifold,b0,b1,b2,b3,b4".to_string()];
                text = Vec::new();
                for flavor in Flavor::all() {
                    let row = solvmanifold_betti(LatticeId::new(id.k, flavor));
                    text.push(format!("M_{{k,{flavor}}}  {}", betti_line(&row)));
                    csv.push(format!("M_{{k,{flavor}}},{}", betti_csv(&row)));
                    rows.push(json!({ "flavor": flavor.to_string(), "betti": row }));
                }
                results["table"] = json!(rows);
            }
            Ok(Outcome {
                command: "betti solvmanifold".into(),
                inputs: json!({ "k": id.k, "flavor": id.flavor.to_string(), "table": table }),
                results,
                pass: true,
                text,
                csv: Some(csv),
            })
        }
    }
}

fn run_lattice(cmd: &LatticeCmd) -> Result<Outcome, UsageError> {
    match cmd {
        LatticeCmd::Verify { lattice } => {
            let id = lattice.resolve()?;
            let ok = verify_presentation(id);
            Ok(Outcome {
                command: "lattice verify".into(),
                inputs: json!({ "k": id.k, "flavor": id.flavor.to_string() }),
                results: json!({
                    "lattice": lattice_json(id),
                    "presentation": builtin_presentation(id).to_string(),
                    "verified": ok,
                }),
                pass: ok,
                text: vec![format!(
                    "presentation of {id}: {}",
                    if ok { "verified" } else { "FAILED" }
                )],
                csv: None,
            })
        }
        LatticeCmd::Center { lattice, bound } => {
            let id = lattice.resolve()?;
            require_bound(*bound)?;
            let ok = id.center_box_check(*bound);
            Ok(Outcome {
                command: "lattice center".into(),
                inputs: json!({ "k": id.k, "flavor": id.flavor.to_string(), "bound": bound }),
                results: json!({ "lattice": lattice_json(id), "bound": bound, "holds": ok }),
                pass: ok,
                text: vec![format!("center of {id} on box {bound}: {}", pass_str(ok))],
                csv: None,
            })
        }
        LatticeCmd::Commutator { k, bound } => {
            if *k == 0 {
                return Err(UsageError("k must be at least 1".into()));
            }
            require_bound(*bound)?;
            let ok = commutator_box_check(*k, *bound);
            Ok(Outcome {
                command: "lattice commutator".into(),
                inputs: json!({ "k": k, "bound": bound }),
                results: json!({ "k": k, "bound": bound, "holds": ok }),
                pass: ok,
                text: vec![format!(
                    "commutators of Λ_{{{k},0}} on box {bound} land in the central integers: {}",
                    pass_str(ok)
                )],
                csv: None,
            })
        }
        LatticeCmd::Index { k, sub, sup } => {
            if *k == 0 {
                return Err(UsageError("k must be at least 1".into()));
            }
            let sub_id = LatticeId::new(*k, flavor_arg(sub)?);
            let sup_id = LatticeId::new(*k, flavor_arg(sup)?);
            let index = covering_index(sub_id, sup_id).map_err(|e| UsageError(e.to_string()))?;
            Ok(Outcome {
                command: "lattice index".into(),
                inputs: json!({
                    "k": k,
                    "sub": sub_id.flavor.to_string(),
                    "super": sup_id.flavor.to_string(),
                }),
                results: json!({ "index": index }),
                pass: true,
                text: vec![format!("[{sup_id} : {sub_id}] = {index}")],
                csv: None,
            })
        }
        LatticeCmd::Normal { k, sub, sup, bound } => {
            if *k == 0 {
                return Err(UsageError("k must be at least 1".into()));
            }
            let sub_id = LatticeId::new(*k, flavor_arg(sub)?);
            let sup_id = LatticeId::new(*k, flavor_arg(sup)?);
            let ok =
                normality_check(sub_id, sup_id, *bound).map_err(|e| UsageError(e.to_string()))?;
            Ok(Outcome {
                command: "lattice normal".into(),
                inputs: json!({
                    "k": k,
                    "sub": sub_id.flavor.to_string(),
                    "super": sup_id.flavor.to_string(),
                    "bound": bound,
                }),
                results: json!({ "normal": ok }),
                pass: ok,
                text: vec![format!("{sub_id} ◁ {sup_id}: {}", pass_str(ok))],
                csv: None,
            })
        }
        LatticeCmd::Classify { l, q, r, k } => {
            if *k == 0 {
                return Err(UsageError("k must be at least 1".into()));
            }
            let q = parse_positive_rat(q, "q")?;
            let r = parse_positive_rat(r, "r")?;
            let classification =
                classify_product_lattice(*l, &q, &r, *k).map_err(|e| UsageError(e.to_string()))?;
            let description =
                format!("{} via {}", classification.lattice, classification.iso.name);
            Ok(Outcome {
                command: "lattice classify".into(),
                inputs: json!({ "l": l, "q": format_rat(&q), "r": format_rat(&r), "k": k }),
                results: json!({
                    "lattice": lattice_json(classification.lattice),
                    "iso": classification.iso.name,
                    "residue": classification.residue,
                    "description": description,
                }),
                pass: true,
                text: vec![description],
                csv: None,
            })
        }
        LatticeCmd::Exotic { bound } => {
            require_bound(*bound)?;
            let report = exotic_lattice_check(*bound);
            let ok = report.all_pass();
            Ok(Outcome {
                command: "lattice exotic".into(),
                inputs: json!({ "bound": bound }),
                results: json!({
                    "closed_under_mul": report.closed_under_mul,
                    "closed_under_inv": report.closed_under_inv,
                    "map_is_homomorphism": report.map_is_homomorphism,
                    "map_images_in_target": report.map_images_in_target,
                    "map_injective_on_box": report.map_injective_on_box,
                }),
                pass: ok,
                text: vec![
                    format!(
                        "two-coset closure on box {bound}: {}",
                        pass_str(report.closed_under_mul && report.closed_under_inv)
                    ),
                    format!(
                        "coordinate map is a homomorphism into Λ_{{2,π}}: {}",
                        pass_str(report.map_is_homomorphism && report.map_images_in_target)
                    ),
                    format!(
                        "coordinate map injective on the box: {}",
                        pass_str(report.map_injective_on_box)
                    ),
                    format!("exotic lattice check: {}", pass_str(ok)),
                ],
                csv: None,
            })
        }
    }
}

fn require_bound(bound: u32) -> Result<(), UsageError> {
    if bound == 0 {
        Err(UsageError("bound must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn pass_str(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn element_outcome(command: &str, inputs: Value, result: &OscElement) -> Outcome {
    Outcome {
        command: command.into(),
        inputs,
        results: json!({ "element": serde_json::to_value(result).unwrap() }),
        pass: true,
        text: vec![serde_json::to_string(result).unwrap()],
        csv: None,
    }
}

fn run_group(cmd: &GroupCmd) -> Result<Outcome, UsageError> {
    match cmd {
        GroupCmd::Mul { a, b } => {
            let (ea, eb) = (parse_element(a)?, parse_element(b)?);
            Ok(element_outcome(
                "group mul",
                json!({ "a": ea, "b": eb }),
                &ea.mul(&eb),
            ))
        }
        GroupCmd::Inv { a } => {
            let ea = parse_element(a)?;
            Ok(element_outcome("group inv", json!({ "a": ea }), &ea.inv()))
        }
        GroupCmd::Comm { a, b } => {
            let (ea, eb) = (parse_element(a)?, parse_element(b)?);
            Ok(element_outcome(
                "group comm",
                json!({ "a": ea, "b": eb }),
                &ea.commutator(&eb),
            ))
        }
    }
}

fn invariants_json(inv: &kodaira_core::fp::AbelianInvariants) -> Value {
    json!({
        "free_rank": inv.free_rank,
        "torsion": inv.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

fn run_invariants(cmd: &InvariantsCmd) -> Result<Outcome, UsageError> {
    match cmd {
        InvariantsCmd::Abelianization { lattice } => {
            let id = lattice.resolve()?;
            let inv = builtin_presentation(id).abelianization();
            let torsion = inv
                .torsion
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",");
            Ok(Outcome {
                command: "invariants abelianization".into(),
                inputs: json!({ "k": id.k, "flavor": id.flavor.to_string() }),
                results: json!({
                    "lattice": lattice_json(id),
                    "invariants": invariants_json(&inv),
                }),
                pass: true,
                text: vec![format!(
                    "H₁ of {id}: rank {}, torsion [{torsion}]  ({inv})",
                    inv.free_rank
                )],
                csv: None,
            })
        }
        InvariantsCmd::Distinguish { kmax } => {
            if *kmax == 0 {
                return Err(UsageError("kmax must be at least 1".into()));
            }
            let report = distinguish_all(*kmax);
            let mut text: Vec<String> = Vec::new();
            let mut csv = vec!["k,flavor,free_rank,torsion".to_string()];
            let mut entries = Vec::new();
            for (id, inv) in &report.entries {
                text.push(format!("{id}: {inv}"));
                csv.push(format!(
                    "{},{},{},{}",
                    id.k,
                    id.flavor,
                    inv.free_rank,
                    inv.torsion
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
                entries.push(json!({
                    "k": id.k,
                    "flavor": id.flavor.to_string(),
                    "invariants": invariants_json(inv),
                }));
            }
            text.push(format!(
                "{} abelianizations pairwise distinct: {}",
                report.entries.len(),
                pass_str(report.all_distinct)
            ));
            Ok(Outcome {
                command: "invariants distinguish".into(),
                inputs: json!({ "kmax": kmax }),
                results: json!({ "entries": entries, "all_distinct": report.all_distinct }),
                pass: report.all_distinct,
                text,
                csv: Some(csv),
            })
        }
    }
}

fn resolve_j(spec: &str, dim: usize) -> Result<AlmostComplexStructure, UsageError> {
    if spec == "builtin" {
        if dim != 4 {
            return Err(UsageError(
                "the builtin J needs a four-dimensional algebra".into(),
            ));
        }
        return Ok(builtin_j());
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| UsageError(format!("cannot read J from `{spec}`: {e}")))?;
    let rows: Vec<Vec<String>> = serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("`{spec}` is not a JSON matrix of rationals: {e}")))?;
    let parsed: Result<Vec<Vec<Rat>>, _> = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rat(s)).collect())
        .collect();
    let matrix = RatMatrix::from_rows(parsed.map_err(|e| UsageError(e.to_string()))?);
    AlmostComplexStructure::new(matrix).map_err(|e| UsageError(e.to_string()))
}

fn run_geometry(cmd: &GeometryCmd) -> Result<Outcome, UsageError> {
    match cmd {
        GeometryCmd::Nijenhuis { alg, j } => {
            let (name, algebra) = resolve_algebra(alg)?;
            let j_struct = resolve_j(j, algebra.dim())?;
            let values = nijenhuis(&algebra, &j_struct).map_err(|e| UsageError(e.to_string()))?;
            let all_zero = values
                .iter()
                .all(|(_, v)| v.iter().all(num_traits::Zero::is_zero));
            let rendered: Vec<Value> = values
                .iter()
                .map(|((a, b), v)| {
                    json!({
                        "pair": [a, b],
                        "value": v.iter().map(format_rat).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut text = vec![format!(
                "Nijenhuis tensor on {name}: {}",
                if all_zero {
                    "vanishes (integrable)"
                } else {
                    "nonzero"
                }
            )];
            for ((a, b), v) in &values {
                if v.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                    text.push(format!(
                        "  N(e{a}, e{b}) = ({})",
                        v.iter().map(format_rat).collect::<Vec<_>>().join(", ")
                    ));
                }
            }
            Ok(Outcome {
                command: "geometry nijenhuis".into(),
                inputs: json!({ "algebra": name, "j": j }),
                results: json!({ "values": rendered, "all_zero": all_zero }),
                pass: true,
                text,
                csv: None,
            })
        }
        GeometryCmd::AbelianCs { alg, j } => {
            let (name, algebra) = resolve_algebra(alg)?;
            let j_struct = resolve_j(j, algebra.dim())?;
            let abelian =
                is_abelian_cs(&algebra, &j_struct).map_err(|e| UsageError(e.to_string()))?;
            Ok(Outcome {
                command: "geometry abelian-cs".into(),
                inputs: json!({ "algebra": name, "j": j }),
                results: json!({ "abelian": abelian }),
                pass: true,
                text: vec![format!("[Ju, Jv] = [u, v] on {name}: {abelian}")],
                csv: None,
            })
        }
        GeometryCmd::Symplectic { alg } => {
            let (name, algebra) = resolve_algebra(alg)?;
            let closed = closed_two_forms(&algebra).map_err(|e| UsageError(e.to_string()))?;
            let witness = invariant_symplectic(&algebra).map_err(|e| UsageError(e.to_string()))?;
            let (results, text) = match &witness {
                None => (
                    json!({ "closed_two_forms": closed.len(), "witness": Value::Null }),
                    vec![format!(
                        "no invariant symplectic form on {name}: the wedge square vanishes on all {} closed two-forms",
                        closed.len()
                    )],
                ),
                Some(w) => {
                    let not_closed_in_oscillator = (name == "r_x_h3").then(|| {
                        is_closed_two_form(&lie::oscillator(), &w.form)
                            .map(|closed| !closed)
                            .unwrap_or(false)
                    });
                    let mut text = vec![
                        format!(
                            "invariant symplectic form on {name}: ω = {}",
                            format_base_cochain(2, &w.form)
                        ),
                        format!(
                            "certificate: dω = 0, ω∧ω = {} vol ≠ 0",
                            format_rat(&w.wedge_square)
                        ),
                    ];
                    if let Some(fails) = not_closed_in_oscillator {
                        text.push(format!(
                            "same form fails closedness in the oscillator complex: {fails}"
                        ));
                    }
                    (
                        json!({
                            "closed_two_forms": closed.len(),
                            "witness": {
                                "form": w.form.iter().map(format_rat).collect::<Vec<_>>(),
                                "coefficients": w.coefficients.iter().map(format_rat).collect::<Vec<_>>(),
                                "wedge_square": format_rat(&w.wedge_square),
                                "rendered": format_base_cochain(2, &w.form),
                                "not_closed_in_oscillator": not_closed_in_oscillator,
                            },
                        }),
                        text,
                    )
                }
            };
            Ok(Outcome {
                command: "geometry symplectic".into(),
                inputs: json!({ "algebra": name }),
                results,
                pass: true,
                text,
                csv: None,
            })
        }
    }
}

fn run_lie(cmd: &LieCmd) -> Result<Outcome, UsageError> {
    match cmd {
        LieCmd::Validate { alg } => {
            let (name, algebra) = resolve_algebra(alg)?;
            let violations = algebra.validate();
            let ok = violations.is_empty();
            let rendered: Vec<Value> = violations
                .iter()
                .map(|v| {
                    json!({
                        "triple": [v.triple.0, v.triple.1, v.triple.2],
                        "defect": v.defect.iter().map(format_rat).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome {
                command: "lie validate".into(),
                inputs: json!({ "algebra": name }),
                results: json!({ "violations": rendered }),
                pass: ok,
                text: vec![if ok {
                    format!("{name}: Jacobi identity holds on all basis triples")
                } else {
                    format!("{name}: {} Jacobi violations", violations.len())
                }],
                csv: None,
            })
        }
        LieCmd::Unimodular { alg } => {
            let (name, algebra) = resolve_algebra(alg)?;
            let unimodular = algebra.is_unimodular();
            Ok(Outcome {
                command: "lie unimodular".into(),
                inputs: json!({ "algebra": name }),
                results: json!({ "unimodular": unimodular }),
                pass: true,
                text: vec![format!("{name} unimodular: {unimodular}")],
                csv: None,
            })
        }
        LieCmd::Solvability { alg, trials } => {
            let (name, algebra) = resolve_algebra(alg)?;
            let seed = std::env::var(SEED_ENV)
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(DEFAULT_SEED);
            let vectors = default_trial_vectors(algebra.dim(), seed, *trials);
            let verdict = algebra.completely_solvable_witness(&vectors);
            let (results, text) = match &verdict {
                SolvabilityVerdict::Witness {
                    vector,
                    char_poly,
                    distinct_real,
                    distinct_complex,
                } => (
                    json!({
                        "verdict": "witness",
                        "vector": vector.iter().map(format_rat).collect::<Vec<_>>(),
                        "char_poly": format!("{char_poly:?}"),
                        "distinct_real_roots": distinct_real,
                        "distinct_complex_roots": distinct_complex,
                        "seed": seed,
                    }),
                    vec![
                        format!("{name} is NOT completely solvable"),
                        format!(
                            "witness ad-vector ({}) has characteristic polynomial {char_poly:?}",
                            vector.iter().map(format_rat).collect::<Vec<_>>().join(", ")
                        ),
                        format!(
                            "{distinct_real} distinct real roots of {distinct_complex} distinct complex roots"
                        ),
                    ],
                ),
                SolvabilityVerdict::NoWitnessFound { trials } => (
                    json!({ "verdict": "no_witness_found", "trials": trials, "seed": seed }),
                    vec![format!(
                        "{name}: no witness among {trials} trial vectors; complete solvability is inconclusive"
                    )],
                ),
            };
            Ok(Outcome {
                command: "lie solvability".into(),
                inputs: json!({ "algebra": name, "trials": trials }),
                results,
                pass: true,
                text,
                csv: None,
            })
        }
    }
}
