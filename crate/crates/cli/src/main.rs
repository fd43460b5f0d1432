//! `fanfold`: command-line access to fan files.
//!
//! Files use 0-based ray indices; reports and the `--wall`/`--ray` flags of
//! `surgery` and `contract` use the 1-based labels `v1, v2, ...`, and every
//! report starts with the label table.
//!
//! Exit codes: 0 on success, 1 when an `--expect-*` assertion fails, 2 on
//! unreadable or invalid input.

use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fanfold::arith::int_to_json;
use fanfold::catalog::{self, CatalogId};
use fanfold::enumeration::enumerate_smooth_complete_fans;
use fanfold::io::{fan_to_json, parse_fan, parse_ray_list, write_fan};
use fanfold::primitive;
use fanfold::projectivity;
use fanfold::search::{projectivize, surgery_graph, SearchOptions};
use fanfold::surgery;
use fanfold::{contract_ray, star_subdivide, Fan};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "fanfold", version, about = "Smoothness, projectivity and wall surgery for 3-dimensional fans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a fan and report smoothness, completeness and projectivity
    Check {
        fan: PathBuf,
        /// Include the ample divisor or the Farkas multipliers
        #[arg(long)]
        certificate: bool,
        /// Exit with status 1 unless the projectivity verdict matches
        #[arg(long, value_name = "BOOL")]
        expect_projective: Option<bool>,
    },
    /// List the primitive collections
    Collections { fan: PathBuf },
    /// List the primitive relations of a smooth complete fan
    Relations { fan: PathBuf },
    /// List every wall with its circuit relation and classification
    Walls { fan: PathBuf },
    /// Exchange the two cones on a wall
    Surgery {
        fan: PathBuf,
        /// Wall rays as 1-based labels, e.g. `1,7` for <v1,v7>
        #[arg(long, value_name = "I,J")]
        wall: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Star subdivision along a new ray
    Subdivide {
        fan: PathBuf,
        /// Integer coordinates of the new ray, e.g. `1,1,0`
        #[arg(long, value_name = "X,Y,Z", allow_hyphen_values = true)]
        ray: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Remove a ray whose star is a blow-up star
    Contract {
        fan: PathBuf,
        /// 1-based label of the ray to remove
        #[arg(long, value_name = "K")]
        ray: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Breadth-first search for a projective fan reachable by wall surgery
    Search {
        fan: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        #[arg(long)]
        flops_only: bool,
        /// Also write the final fan to this file
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The surgery graph around a fan
    Graph {
        fan: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        #[arg(long)]
        flops_only: bool,
        /// Graphviz output instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Every smooth complete fan on a fixed set of rays
    Enumerate {
        /// A ray list or a fan file whose rays are used
        #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
        rays: Option<PathBuf>,
        /// Take the rays of a catalog fan
        #[arg(long, value_name = "ID")]
        catalog: Option<String>,
        #[arg(long, value_name = "a=..,b=..", default_value = "", requires = "catalog")]
        params: String,
        /// Exit with status 1 unless exactly this many fans are found
        #[arg(long, value_name = "N")]
        expect_count: Option<usize>,
    },
    /// Emit a catalog fan, or list the catalog
    Catalog {
        #[arg(required_unless_present = "list")]
        id: Option<String>,
        #[arg(long, value_name = "a=..,b=..", default_value = "")]
        params: String,
        #[arg(long, conflicts_with = "id")]
        list: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    /// Malformed or invalid input.
    Input(String),
    /// The command ran but an `--expect-*` assertion did not hold.
    Expectation(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Expectation(m) => write!(f, "expectation failed: {m}"),
        }
    }
}

fn input<E: fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<Fan, CliError> {
    parse_fan(&read_text(path)?).map_err(input)
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `v1 = rays[0] = (1, 0, 0)` for each ray, at the head of every report.
fn label_table(rays: &[Vec<i64>]) -> Value {
    rays.iter()
        .enumerate()
        .map(|(i, r)| {
            let coords: Vec<String> = r.iter().map(ToString::to_string).collect();
            json!(format!("{} = rays[{i}] = ({})", Fan::label(i), coords.join(", ")))
        })
        .collect()
}

fn labels(fan: &Fan) -> Value {
    label_table(&fan.raw_rays())
}

fn label_list(rays: &[usize]) -> Vec<String> {
    rays.iter().map(|&r| Fan::label(r)).collect()
}

fn parse_integers(text: &str, what: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| CliError::Input(format!("{what}: `{p}` is not an integer"))))
        .collect()
}

/// A 1-based label as a 0-based index.
fn ray_index(fan: &Fan, label: i64) -> Result<usize, CliError> {
    if label < 1 || label as usize > fan.rays().len() {
        return Err(CliError::Input(format!("ray v{label} does not exist ({} rays)", fan.rays().len())));
    }
    Ok(label as usize - 1)
}

fn parse_catalog(id: &str, params: &str) -> Result<(CatalogId, Vec<i64>), CliError> {
    let id: CatalogId = id.parse().map_err(input)?;
    let params = catalog::parse_params(id, params).map_err(CliError::Input)?;
    Ok((id, params))
}

/// Writes the fan to `output` when given; otherwise embeds it in the report.
fn emit_fan(report: &mut Value, fan: &Fan, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write_output(path, &write_fan(fan))?;
            report["output"] = json!(path.display().to_string());
        }
        None => report["fan"] = fan_to_json(fan),
    }
    Ok(())
}

fn check(fan: &Fan, certificate: bool, expect: Option<bool>) -> Result<(Value, Option<CliError>), CliError> {
    let complete = fan.is_complete();
    let verdict = if complete { Some(projectivity::is_projective(fan).map_err(input)?) } else { None };
    let mut report = json!({
        "labels": labels(fan),
        "valid": true,
        "simplicial": true,
        "smooth": fan.is_smooth(),
        "complete": complete,
        "projective": verdict.as_ref().map(|v| v.projective),
        "picard_number": fan.picard_number().ok(),
        "wall_count": fan.walls().map_or(0, |w| w.len()),
        "digest": fan.canonical_key().digest(),
    });
    if certificate {
        report["certificate"] = verdict.as_ref().map_or(Value::Null, |v| v.certificate.to_json());
    }
    let failed = match (expect, &verdict) {
        (None, _) => None,
        (Some(want), Some(v)) if v.projective == want => None,
        (Some(want), Some(v)) => Some(CliError::Expectation(format!("projective is {}, expected {want}", v.projective))),
        (Some(_), None) => Some(CliError::Expectation("the fan is not complete, projectivity is undefined".into())),
    };
    Ok((report, failed))
}

fn walls_report(fan: &Fan) -> Result<Value, CliError> {
    let classes = surgery::classify_walls(fan).map_err(input)?;
    let walls: Vec<Value> = classes
        .iter()
        .map(|(wall, class)| {
            json!({
                "wall": wall.wall_rays,
                "label": format!("<{}>", label_list(&wall.wall_rays).join(",")),
                "off_rays": wall.off_rays,
                "circuit": projectivity::circuit(fan, wall).iter().map(int_to_json).collect::<Vec<_>>(),
                "kind": class.kind.as_str(),
                "degree": int_to_json(&class.degree),
            })
        })
        .collect();
    Ok(json!({ "labels": labels(fan), "walls": walls }))
}

fn run(command: Command) -> Result<(String, Option<CliError>), CliError> {
    let pretty = |v: &Value| format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize"));
    let done = |v: Value| Ok((pretty(&v), None));
    match command {
        Command::Check { fan, certificate, expect_projective } => {
            let (report, failed) = check(&load_fan(&fan)?, certificate, expect_projective)?;
            Ok((pretty(&report), failed))
        }
        Command::Collections { fan } => {
            let fan = load_fan(&fan)?;
            let collections: Vec<Value> = primitive::primitive_collections(&fan)
                .iter()
                .map(|c| json!({ "rays": c.rays(), "labels": label_list(c.rays()) }))
                .collect();
            done(json!({ "labels": labels(&fan), "collections": collections }))
        }
        Command::Relations { fan } => {
            let fan = load_fan(&fan)?;
            let relations: Vec<Value> = primitive::primitive_relations(&fan)
                .map_err(input)?
                .iter()
                .map(|r| {
                    json!({
                        "collection": r.collection.rays(),
                        "target_cone": r.target_cone.rays(),
                        "coefficients": r.coefficients.iter().map(int_to_json).collect::<Vec<_>>(),
                        "relation": r.to_string(),
                        "fiber_type": r.is_fiber_type(),
                    })
                })
                .collect();
            done(json!({ "labels": labels(&fan), "relations": relations }))
        }
        Command::Walls { fan } => done(walls_report(&load_fan(&fan)?)?),
        Command::Surgery { fan, wall, output } => {
            let fan = load_fan(&fan)?;
            let ij = parse_integers(&wall, "--wall")?;
            let [i, j] = ij[..] else {
                return Err(CliError::Input(format!("--wall takes two labels, got `{wall}`")));
            };
            let rays = [ray_index(&fan, i)?, ray_index(&fan, j)?];
            let (next, step) = surgery::perform_surgery_at(&fan, rays).map_err(input)?;
            let mut report = json!({ "labels": labels(&fan), "step": step.to_json() });
            emit_fan(&mut report, &next, output.as_deref())?;
            done(report)
        }
        Command::Subdivide { fan, ray, output } => {
            let fan = load_fan(&fan)?;
            let coords = parse_integers(&ray, "--ray")?;
            let next = star_subdivide(&fan, &coords).map_err(input)?;
            let index = next.rays().len() - 1;
            let mut report = json!({
                "labels": labels(&next),
                "new_ray": { "label": Fan::label(index), "index": index, "ray": coords },
            });
            emit_fan(&mut report, &next, output.as_deref())?;
            done(report)
        }
        Command::Contract { fan, ray, output } => {
            let fan = load_fan(&fan)?;
            let index = ray_index(&fan, ray as i64)?;
            let next = contract_ray(&fan, index).map_err(input)?;
            let mut report = json!({
                "labels": labels(&fan),
                "removed": { "label": Fan::label(index), "index": index, "ray": fan.ray(index).coords() },
                "result_labels": labels(&next),
            });
            emit_fan(&mut report, &next, output.as_deref())?;
            done(report)
        }
        Command::Search { fan, max_depth, flops_only, output } => {
            let fan = load_fan(&fan)?;
            let options = SearchOptions::new(max_depth).flops_only(flops_only);
            let result = projectivize(&fan, &options).map_err(input)?;
            if let Some(path) = &output {
                write_output(path, &write_fan(&result.final_fan))?;
            }
            let mut report = json!({ "labels": labels(&fan) });
            if let (Value::Object(head), Value::Object(body)) = (&mut report, result.to_json()) {
                head.extend(body);
            }
            done(report)
        }
        Command::Graph { fan, max_depth, flops_only, dot } => {
            let fan = load_fan(&fan)?;
            let graph = surgery_graph(&fan, &SearchOptions::new(max_depth).flops_only(flops_only)).map_err(input)?;
            if dot {
                Ok((graph.to_dot(), None))
            } else {
                let mut report = json!({ "labels": labels(&fan) });
                if let (Value::Object(head), Value::Object(body)) = (&mut report, graph.to_json()) {
                    head.extend(body);
                }
                done(report)
            }
        }
        Command::Enumerate { rays, catalog: id, params, expect_count } => {
            let rays = match (rays, id) {
                (Some(path), _) => parse_ray_list(&read_text(&path)?).map_err(input)?,
                (None, Some(id)) => {
                    let (id, params) = parse_catalog(&id, &params)?;
                    catalog::build(id, &params).map_err(input)?.raw_rays()
                }
                (None, None) => return Err(CliError::Input("give --rays or --catalog".into())),
            };
            let report = enumerate_smooth_complete_fans(&rays).map_err(input)?;
            let mut out = json!({ "labels": label_table(&rays) });
            if let (Value::Object(head), Value::Object(body)) = (&mut out, report.to_json()) {
                head.extend(body);
            }
            let failed = expect_count.filter(|&n| n != report.fans.len()).map(|n| {
                CliError::Expectation(format!("found {} fans, expected {n}", report.fans.len()))
            });
            Ok((pretty(&out), failed))
        }
        Command::Catalog { list: true, .. } => {
            let entries: Vec<Value> = CatalogId::ALL
                .iter()
                .map(|id| json!({ "id": id.name(), "label": id.label(), "params": id.params(), "arity": id.arity() }))
                .collect();
            done(json!(entries))
        }
        Command::Catalog { id, params, output, .. } => {
            let id = id.ok_or_else(|| CliError::Input("give a catalog id or --list".into()))?;
            let (id, params) = parse_catalog(&id, &params)?;
            let text = write_fan(&catalog::build(id, &params).map_err(input)?);
            match output {
                Some(path) => {
                    write_output(&path, &text)?;
                    Ok((String::new(), None))
                }
                None => Ok((text, None)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, failed)) => {
            print!("{out}");
            match failed {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("{e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Input(_) => ExitCode::from(2),
                CliError::Expectation(_) => ExitCode::from(1),
            }
        }
    }
}
