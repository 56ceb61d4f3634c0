//! Command-line front end: root data, alcove geometry, orbit
//! classification, category bounds, matrix/Clifford realizations, and
//! verification campaigns, with aligned-table and JSON output.
//!
//! Exit codes: 0 on success, 1 when a verification campaign fails, 2 on
//! bad flags or invalid arguments.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use alcove::affine::{alcoves_at_vertex, stabilizer, vertices, wall_equation};
use alcove::clifford::{spin_vertex_element, vector_action};
use alcove::exact::{rat_str, vec_str};
use alcove::orbits::{
    classify_all, classify_orbit, ls_bound, weyl_order, BoundOptions,
};
use alcove::root_system::{LieFamily, LieType, RootSystem};
use alcove::symplectic::sp_exp_vertex;
use alcove::verify::{run as run_verify, CheckKind, VerifyPlan};

/// Default rank guard for the enumeration-heavy subcommands.
const RANK_GUARD: usize = 8;

#[derive(Parser)]
#[command(
    name = "alcove",
    about = "Fundamental alcoves, distinguished conjugacy classes, and L-S category bounds \
             for the simple simply connected compact Lie groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TypeArgs {
    /// Family letter: A, B, C, D, E, F, or G
    #[arg(long)]
    family: char,
    /// Rank within the family
    #[arg(long)]
    rank: usize,
}

impl TypeArgs {
    fn lie_type(&self) -> Result<LieType, String> {
        let family = LieFamily::from_letter(self.family)
            .ok_or_else(|| format!("unknown family '{}'", self.family))?;
        LieType::new(family, self.rank).map_err(|e| e.to_string())
    }

    fn build(&self) -> Result<RootSystem, String> {
        RootSystem::build(self.lie_type()?).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RealizeModel {
    Quat,
    Clifford,
    So,
}

#[derive(Subcommand)]
enum Command {
    /// Root datum: simple roots, all roots, highest root, marks
    Roots {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Marks of the highest root in the simple-root basis
    Marks {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Vertices, walls, and vertex stabilizers of the fundamental alcove
    Alcove {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
        /// Allow rank above the default guard of 8
        #[arg(long)]
        force: bool,
    },
    /// Identification and dimensions of the distinguished orbits
    Orbits {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        json: bool,
    },
    /// The vertex-orbit upper bound for the category of the group
    Bound {
        #[command(flatten)]
        ty: TypeArgs,
        /// Assume the conjectured values for quaternionic Grassmannians
        #[arg(long)]
        assume_conjecture: bool,
        /// Override the value of orbit k, as k=v; repeatable
        #[arg(long = "override", value_name = "K=V")]
        overrides: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Concrete model of exp(v_k) in the chosen realization
    Realize {
        #[command(flatten)]
        ty: TypeArgs,
        /// Vertex index
        #[arg(long)]
        k: usize,
        /// quat (family C), clifford or so (families B and D)
        #[arg(long, value_enum)]
        model: RealizeModel,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force verification campaign
    Verify {
        #[command(flatten)]
        ty: TypeArgs,
        /// Comma-separated check names, or "all"
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        word_length_bound: usize,
        #[arg(long, default_value_t = 12)]
        grid_denominator: u64,
        #[arg(long)]
        json: bool,
        /// Allow rank above the default guard of 8
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn print_doc(doc: &Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Roots { ty, json } => {
            let rs = ty.build()?;
            if json {
                print_doc(&rs.to_json());
            } else {
                println!("{} = {}", rs.lie_type, rs.lie_type.family.group_name(rs.rank()));
                println!("ambient dimension: {}", rs.ambient_dim);
                println!("roots: {} ({} positive)", rs.roots.len(), rs.positive_roots.len());
                println!("highest root: {}", vec_str(&rs.highest_root));
                let marks: Vec<String> = rs.marks().iter().map(|m| m.to_string()).collect();
                println!("marks: ({})", marks.join(", "));
                println!("simple roots:");
                for (i, alpha) in rs.simple_roots.iter().enumerate() {
                    println!("  alpha_{}: {}", i + 1, vec_str(alpha));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Marks { ty, json } => {
            let rs = ty.build()?;
            if json {
                print_doc(&json!({
                    "type": rs.lie_type.to_string(),
                    "marks": rs.marks(),
                }));
            } else {
                let marks: Vec<String> = rs.marks().iter().map(|m| m.to_string()).collect();
                println!("{}: ({})", rs.lie_type, marks.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Alcove { ty, json, force } => {
            let rs = ty.build()?;
            if rs.rank() > RANK_GUARD && !force {
                return Err(format!(
                    "rank {} exceeds the default guard of {RANK_GUARD}; pass --force to proceed",
                    rs.rank()
                ));
            }
            let doc = alcove_doc(&rs)?;
            if json {
                print_doc(&doc);
            } else {
                println!(
                    "fundamental alcove of {} = {}",
                    rs.lie_type,
                    rs.lie_type.family.group_name(rs.rank())
                );
                println!("vertices:");
                for (k, v) in vertices(&rs).iter().enumerate() {
                    println!("  v_{k}: {}", vec_str(v));
                }
                println!("walls (alpha(H) = c):");
                for j in 0..=rs.rank() {
                    let (alpha, c) = wall_equation(&rs, j);
                    println!("  F_{j}: {} = {}", vec_str(&alpha), rat_str(&c));
                }
                println!("vertex stabilizer orders:");
                for item in doc["stabilizers"].as_array().expect("array") {
                    println!(
                        "  |W_{}| = {} ({})",
                        item["k"],
                        item["order"].as_str().expect("string"),
                        item["components"].as_str().expect("string")
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbits { ty, json } => {
            let rs = ty.build()?;
            let orbits = classify_all(&rs);
            if json {
                print_doc(&json!({
                    "type": rs.lie_type.to_string(),
                    "orbits": orbits.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
                }));
            } else {
                println!(
                    "distinguished orbits of {} = {}",
                    rs.lie_type,
                    rs.lie_type.family.group_name(rs.rank())
                );
                println!(
                    "{:>3}  {:<16} {:>9}  {:<22} {:<18}",
                    "k", "identification", "orbit dim", "stabilizer", "rel cat"
                );
                for o in &orbits {
                    println!(
                        "{:>3}  {:<16} {:>9}  {:<22} {:<18}",
                        o.k,
                        o.identification.to_string(),
                        o.orbit_dim,
                        o.components_string(),
                        o.rel_cat.to_string(),
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound {
            ty,
            assume_conjecture,
            overrides,
            json,
        } => {
            let rs = ty.build()?;
            let mut parsed: BTreeMap<usize, u32> = BTreeMap::new();
            for spec in &overrides {
                let (k, v) = spec
                    .split_once('=')
                    .ok_or_else(|| format!("override '{spec}' is not of the form k=v"))?;
                let k: usize = k.trim().parse().map_err(|_| format!("bad index in '{spec}'"))?;
                let v: u32 = v.trim().parse().map_err(|_| format!("bad value in '{spec}'"))?;
                if k > rs.rank() {
                    return Err(format!("override index {k} exceeds rank {}", rs.rank()));
                }
                parsed.insert(k, v);
            }
            let report = ls_bound(
                &rs,
                &BoundOptions {
                    assume_conjecture,
                    overrides: parsed,
                },
            );
            if json {
                print_doc(&report.to_json());
            } else {
                print!("{report}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Realize { ty, k, model, json } => {
            let rs = ty.build()?;
            let n = rs.rank();
            if k > n {
                return Err(format!("vertex index {k} exceeds rank {n}"));
            }
            realize(&rs, k, model, json)
        }
        Command::Verify {
            ty,
            checks,
            seed,
            samples,
            word_length_bound,
            grid_denominator,
            json,
            force,
        } => {
            let lie_type = ty.lie_type()?;
            if lie_type.rank > RANK_GUARD && !force {
                return Err(format!(
                    "rank {} exceeds the default guard of {RANK_GUARD}; pass --force to proceed",
                    lie_type.rank
                ));
            }
            let parsed_checks = if checks.trim() == "all" {
                CheckKind::all_for(lie_type)
            } else {
                let mut list = Vec::new();
                for name in checks.split(',') {
                    let name = name.trim();
                    let check = CheckKind::from_str_name(name)
                        .ok_or_else(|| format!("unknown check '{name}'"))?;
                    list.push(check);
                }
                list
            };
            let plan = VerifyPlan {
                lie_type,
                checks: parsed_checks,
                seed,
                samples,
                word_length_bound,
                grid_denominator,
            };
            let report = run_verify(&plan).map_err(|e| e.to_string())?;
            if json {
                print_doc(&report.to_json());
            } else {
                print!("{report}");
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// The alcove document: exact vertices, wall equations, stabilizer data,
/// and cell-membership checks of the vertices and the barycenter.
fn alcove_doc(rs: &RootSystem) -> Result<Value, String> {
    let verts = vertices(rs);
    let n = rs.rank();
    let mut stabilizers = Vec::new();
    for k in 0..=n {
        let orbit = classify_orbit(rs, k);
        let order: u128 = orbit.components.iter().map(weyl_order).product();
        // Materialize and cross-check the closure when it is small.
        let (bfs_order, alcove_count) = if order <= 20_000 {
            let stab = stabilizer(rs, k).map_err(|e| e.to_string())?;
            let count = alcoves_at_vertex(rs, k).map_err(|e| e.to_string())?.len();
            if stab.order() as u128 != order {
                return Err(format!(
                    "stabilizer order mismatch at vertex {k}: closure {} vs components {}",
                    stab.order(),
                    order
                ));
            }
            (Some(stab.order()), Some(count))
        } else {
            (None, None)
        };
        stabilizers.push(json!({
            "k": k,
            "order": order.to_string(),
            "components": orbit.components_string(),
            "bfs_order": bfs_order,
            "alcoves_at_vertex": alcove_count,
        }));
    }
    let barycenter = alcove::affine::alcove_barycenter(rs);
    let cell_membership = json!({
        "barycenter": (0..=n)
            .map(|k| alcove::affine::in_cell(rs, k, &barycenter))
            .collect::<Vec<_>>(),
        "vertices": (0..=n)
            .map(|k| {
                (0..=n)
                    .map(|j| alcove::affine::in_cell(rs, k, &verts[j]))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    });
    Ok(json!({
        "type": rs.lie_type.to_string(),
        "vertices": verts
            .iter()
            .map(|v| v.iter().map(rat_str).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "walls": (0..=n)
            .map(|j| {
                let (alpha, c) = wall_equation(rs, j);
                json!({
                    "j": j,
                    "alpha": alpha.iter().map(rat_str).collect::<Vec<_>>(),
                    "c": rat_str(&c),
                })
            })
            .collect::<Vec<_>>(),
        "stabilizers": stabilizers,
        "cell_membership": cell_membership,
    }))
}

fn realize(rs: &RootSystem, k: usize, model: RealizeModel, json: bool) -> Result<ExitCode, String> {
    let family = rs.lie_type.family;
    let n = rs.rank();
    match model {
        RealizeModel::Quat => {
            if family != LieFamily::C {
                return Err(format!(
                    "the quaternion model applies to family C, not {}",
                    family.letter()
                ));
            }
            let g = sp_exp_vertex(n, k);
            if json {
                let entries: Vec<Vec<String>> = (0..n)
                    .map(|i| (0..n).map(|j| g.at(i, j).to_string()).collect())
                    .collect();
                print_doc(&json!({
                    "type": rs.lie_type.to_string(),
                    "k": k,
                    "model": "quat",
                    "matrix": entries,
                }));
            } else {
                println!("exp(v_{k}) in Sp({n}):");
                for i in 0..n {
                    let row: Vec<String> = (0..n).map(|j| g.at(i, j).to_string()).collect();
                    println!("  [{}]", row.join(", "));
                }
            }
        }
        RealizeModel::Clifford | RealizeModel::So => {
            if !matches!(family, LieFamily::B | LieFamily::D) {
                return Err(format!(
                    "the spin models apply to families B and D, not {}",
                    family.letter()
                ));
            }
            let g = spin_vertex_element(family, n, k).map_err(|e| e.to_string())?;
            if model == RealizeModel::Clifford {
                if json {
                    print_doc(&json!({
                        "type": rs.lie_type.to_string(),
                        "k": k,
                        "model": "clifford",
                        "element": g.monomial_string(),
                        "ambient": g.m,
                    }));
                } else {
                    println!("exp(v_{k}) in Spin({}): {}", g.m, g.monomial_string());
                }
            } else {
                let action = vector_action(&g).map_err(|e| e.to_string())?;
                if json {
                    let entries: Vec<Vec<String>> = (0..action.rows())
                        .map(|i| action.row(i).iter().map(rat_str).collect())
                        .collect();
                    print_doc(&json!({
                        "type": rs.lie_type.to_string(),
                        "k": k,
                        "model": "so",
                        "matrix": entries,
                    }));
                } else {
                    println!("image of exp(v_{k}) in SO({}):", g.m);
                    for i in 0..action.rows() {
                        let row: Vec<String> = action.row(i).iter().map(rat_str).collect();
                        println!("  [{}]", row.join(", "));
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
