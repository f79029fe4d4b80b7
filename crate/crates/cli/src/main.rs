use std::collections::BTreeSet;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use embedkit::lattice_cone::{
    cone_from_generators, generated_group, is_saturated, parse_vector_list, semigroup_member,
    AffineSemigroup, LatticeVector, Membership, PolyCone, Saturation, DEFAULT_BUDGET,
};
use embedkit::monoid::{normal_monoid_check, perfect_closure, DEFAULT_MAX_NEW};
use embedkit::parabolic::{ce_report, parse_nodes, ParabolicData};
use embedkit::rep_theory::{tensor_decompose, weight_multiplicities, weyl_dim, DEFAULT_DIM_CAP};
use embedkit::root_system::{
    cartan_data, group_info, parse_weight_list, GroupType, RootSystem, WeightVector,
    DEFAULT_ORBIT_CAP,
};
use embedkit::sl2::{
    height_algebra_basis, height_from_monomials, orbit_structure, parse_monomials, Height,
};
use embedkit::svariety::{analyze_svariety, hv_report, SVarietyData};
use embedkit::toric::analyze_toric;
use embedkit::Error;

const EXIT_INVALID: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Exact decision procedures for affine embeddings of homogeneous spaces.
#[derive(Parser, Debug)]
#[command(name = "embedkit", version)]
struct Cli {
    /// Emit JSON (keys sorted) instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Search-state budget for semigroup membership and saturation.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Largest Weyl orbit that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, complexity and Cartan data of a group such as "A2" or "A1xB2+T1".
    Group(GroupArgs),
    /// Weyl orbit, dominant representative and dual of a weight.
    Weyl(WeightArgs),
    /// Dimension and weight multiplicities of a simple module.
    Rep(RepArgs),
    /// Decompose V(lhs) ⊗ V(rhs).
    Tensor(TensorArgs),
    /// Rays, facets and faces of the cone spanned by some vectors.
    Cone(LatticeArgs),
    /// Saturation, generated group and membership for an affine semigroup.
    Semigroup(SemigroupArgs),
    /// Affine toric variety of a semigroup of characters.
    Toric(LatticeArgs),
    /// S-variety with the given dominant weight generators.
    Svariety(GensArgs),
    /// Closure of the orbit of a highest weight vector.
    Hv(WeightArgs),
    /// Perfect closure of a set of dominant weights.
    MonoidPerfect(PerfectArgs),
    /// Cone criteria for a normal reductive monoid.
    MonoidNormal(NormalArgs),
    /// Orbit combinatorics of the canonical embedding of G/P^u.
    Ce(CeArgs),
    /// Normal affine SL(2)-embeddings by height.
    Sl2(Sl2Args),
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    group: String,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[arg(long)]
    group: String,
    /// Weight in fundamental-weight coordinates followed by central ones, e.g. "[1,0]".
    #[arg(long)]
    weight: String,
}

#[derive(Args, Debug)]
struct RepArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    weight: String,
    /// Largest dimension for which multiplicities are tabulated.
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: u128,
}

#[derive(Args, Debug)]
struct TensorArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long)]
    rank: usize,
    /// Generators, e.g. "[1,0];[0,1]".
    #[arg(long)]
    gens: String,
}

#[derive(Args, Debug)]
struct SemigroupArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    gens: String,
    /// Vector whose membership is decided.
    #[arg(long)]
    member: Option<String>,
}

#[derive(Args, Debug)]
struct GensArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    gens: String,
}

#[derive(Args, Debug)]
struct PerfectArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    gens: String,
    /// Stop after adjoining this many weights.
    #[arg(long, default_value_t = DEFAULT_MAX_NEW)]
    max_new: usize,
}

#[derive(Args, Debug)]
struct NormalArgs {
    #[arg(long)]
    group: String,
    /// Generators of the cone K, in weight coordinates.
    #[arg(long)]
    cone: String,
}

#[derive(Args, Debug)]
struct CeArgs {
    #[arg(long)]
    group: String,
    /// Levi nodes, 1-based and comma separated; empty for a Borel subgroup.
    #[arg(long, default_value = "")]
    levi: String,
}

#[derive(Args, Debug)]
struct Sl2Args {
    /// Height p/q in (0,1].
    #[arg(
        long,
        conflicts_with = "monomials",
        required_unless_present = "monomials"
    )]
    height: Option<String>,
    /// Monomial generators "(i,j);..." of a height algebra, whose height is reported.
    #[arg(long)]
    monomials: Option<String>,
    /// Only the orbit list.
    #[arg(long)]
    orbits: bool,
    /// Only the Hilbert basis of A(h).
    #[arg(long)]
    basis: bool,
}

/// A failure, tagged with the argument it is blamed on when there is one.
struct Failure {
    arg: Option<&'static str>,
    err: Error,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure { arg: None, err }
    }
}

trait Blame<T> {
    fn blame(self, arg: &'static str) -> Result<T, Failure>;
}

impl<T> Blame<T> for embedkit::Result<T> {
    fn blame(self, arg: &'static str) -> Result<T, Failure> {
        self.map_err(|err| Failure {
            arg: Some(arg),
            err,
        })
    }
}

/// Rendered report plus whether its verdict is inconclusive.
struct Report {
    json: Value,
    text: String,
    inconclusive: bool,
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Self {
        let color = std::env::var("EMBEDKIT_COLOR")
            .map(|v| {
                matches!(
                    v.to_ascii_lowercase().as_str(),
                    "1" | "true" | "always" | "yes"
                )
            })
            .unwrap_or(false);
        Style { color }
    }

    fn key(&self, k: &str) -> String {
        if self.color {
            format!("\x1b[1m{k}\x1b[0m")
        } else {
            k.to_string()
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn list<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn verdict_text(s: &Saturation) -> String {
    match s {
        Saturation::Saturated => "true".into(),
        Saturation::NotSaturated { witness } => format!("false (witness {witness})"),
        Saturation::Inconclusive => "inconclusive".into(),
    }
}

fn group(s: &str) -> Result<GroupType, Failure> {
    s.parse().blame("--group")
}

fn weight(s: &str, arg: &'static str) -> Result<WeightVector, Failure> {
    s.parse().blame(arg)
}

struct Lines<'a> {
    style: &'a Style,
    out: String,
}

impl<'a> Lines<'a> {
    fn new(style: &'a Style) -> Self {
        Lines {
            style,
            out: String::new(),
        }
    }

    fn kv(&mut self, k: &str, v: impl std::fmt::Display) -> &mut Self {
        self.out.push_str(&format!("{}: {v}\n", self.style.key(k)));
        self
    }

    fn done(&mut self) -> String {
        std::mem::take(&mut self.out)
    }
}

fn run(cli: &Cli, style: &Style) -> Result<Report, Failure> {
    let mut t = Lines::new(style);
    let ok = |json: Value, text: String| Report {
        json,
        text,
        inconclusive: false,
    };
    match &cli.command {
        Command::Group(a) => {
            let g = group(&a.group)?;
            let info = group_info(&g);
            let cd = cartan_data(&g);
            let mut json = to_value(&info);
            json["group"] = json!(g.to_string());
            json["cartan"] = to_value(&cd);
            t.kv("group", &g)
                .kv("dim", info.dim)
                .kv("rank", info.rank)
                .kv("positive roots", info.num_positive_roots)
                .kv("c(G)", info.complexity_of_g)
                .kv("parameter bound", info.affine_parameter_bound)
                .kv("Weyl group order", info.weyl_order)
                .kv("simple roots", list(&cd.simple_roots))
                .kv("positive root weights", list(&cd.positive_roots));
            Ok(ok(json, t.done()))
        }
        Command::Weyl(a) => {
            let g = group(&a.group)?;
            let w = weight(&a.weight, "--weight")?;
            let rs = RootSystem::of(&g);
            rs.check(&w).blame("--weight")?;
            let orbit = rs.weyl_orbit(&w, cli.orbit_cap)?;
            let dominant = rs.dominant_representative(&w);
            let dual = rs.is_dominant(&w).then(|| rs.dual_weight(&w)).transpose()?;
            let json = json!({
                "group": g.to_string(),
                "weight": w,
                "orbit": orbit,
                "orbit_size": orbit.len(),
                "dominant": dominant,
                "dual": dual,
            });
            t.kv("orbit", list(&orbit))
                .kv("orbit size", orbit.len())
                .kv("dominant", &dominant)
                .kv(
                    "dual",
                    dual.map_or_else(|| "n/a (not dominant)".to_string(), |d| d.to_string()),
                );
            Ok(ok(json, t.done()))
        }
        Command::Rep(a) => {
            let g = group(&a.group)?;
            let w = weight(&a.weight, "--weight")?;
            let dim = weyl_dim(&g, &w).blame("--weight")?;
            let table = weight_multiplicities(&g, &w, a.dim_cap)?;
            let mut json = to_value(&table);
            json["dim"] = json!(dim.to_string());
            json["group"] = json!(g.to_string());
            t.kv("dim", dim);
            for (wt, m) in &table.entries {
                t.kv(&format!("mult {wt}"), m);
            }
            Ok(ok(json, t.done()))
        }
        Command::Tensor(a) => {
            let g = group(&a.group)?;
            let l = weight(&a.lhs, "--lhs")?;
            let r = weight(&a.rhs, "--rhs")?;
            RootSystem::of(&g).check_dominant(&l).blame("--lhs")?;
            RootSystem::of(&g).check_dominant(&r).blame("--rhs")?;
            let d = tensor_decompose(&g, &l, &r)?;
            let mut json = to_value(&d);
            json["group"] = json!(g.to_string());
            json["support"] = to_value(&d.support());
            let terms: Vec<String> = d
                .terms
                .iter()
                .rev()
                .map(|(w, m)| {
                    if *m == 1 {
                        format!("V{w}")
                    } else {
                        format!("{m} V{w}")
                    }
                })
                .collect();
            t.kv(&format!("V{l} ⊗ V{r}"), terms.join(" + "));
            Ok(ok(json, t.done()))
        }
        Command::Cone(a) => {
            let gens = parse_vector_list(&a.gens).blame("--gens")?;
            let cone = cone_from_generators(&gens, a.rank).blame("--gens")?;
            let faces = cone.face_lattice();
            let mut json = to_value(&cone);
            json["dim"] = json!(cone.dim());
            json["faces"] = to_value(&faces);
            json["face_count"] = json!(faces.len());
            cone_text(&mut t, &cone);
            t.kv("faces", faces.len());
            Ok(ok(json, t.done()))
        }
        Command::Semigroup(a) => {
            let gens = parse_vector_list(&a.gens).blame("--gens")?;
            let sg = AffineSemigroup::new(a.rank, gens).blame("--gens")?;
            let sat = is_saturated(&sg, cli.budget)?;
            let group = generated_group(&sg);
            let member = a
                .member
                .as_deref()
                .map(|m| -> Result<(LatticeVector, Membership), Failure> {
                    let v: LatticeVector = m.parse().blame("--member")?;
                    let r = semigroup_member(&sg, &v, cli.budget).blame("--member")?;
                    Ok((v, r))
                })
                .transpose()?;
            let mut inconclusive = sat == Saturation::Inconclusive;
            let mut json = json!({
                "saturated": sat.verdict().map_or(json!("inconclusive"), Value::from),
                "witness": sat.witness(),
                "group": group,
            });
            t.kv("saturated", verdict_text(&sat)).kv(
                "index",
                group
                    .index
                    .as_ref()
                    .map_or("infinite".to_string(), |i| i.to_string()),
            );
            if let Some((v, m)) = member {
                let (val, txt) = match &m {
                    Membership::Yes { certificate } => {
                        let cert = LatticeVector::new(certificate.clone());
                        json["certificate"] = to_value(&cert);
                        (json!(true), format!("yes, coefficients {cert}"))
                    }
                    Membership::No => (json!(false), "no".to_string()),
                    Membership::Inconclusive => {
                        inconclusive = true;
                        (json!("inconclusive"), "inconclusive".to_string())
                    }
                };
                json["member"] = val;
                json["vector"] = to_value(&v);
                t.kv(&format!("{v} member"), txt);
            }
            Ok(Report {
                json,
                text: t.done(),
                inconclusive,
            })
        }
        Command::Toric(a) => {
            let gens = parse_vector_list(&a.gens).blame("--gens")?;
            let r = analyze_toric(a.rank, &gens, cli.budget).blame("--gens")?;
            t.kv("effective", r.effective)
                .kv("solid", r.solid)
                .kv("normal", verdict_text(&r.normal))
                .kv(
                    "orbits",
                    r.orbit_count
                        .map_or("n/a (not normal)".to_string(), |c| c.to_string()),
                );
            for f in r.ideal_faces.iter().flatten() {
                t.kv(&format!("face dim {}", f.face_dim), &f.ideal);
            }
            for n in &r.notes {
                t.kv("note", n);
            }
            Ok(Report {
                json: to_value(&r),
                text: t.done(),
                inconclusive: r.is_inconclusive(),
            })
        }
        Command::Svariety(a) => {
            let g = group(&a.group)?;
            let gens = parse_weight_list(&a.gens).blame("--gens")?;
            let data = SVarietyData::new(g, gens).blame("--gens")?;
            let r = analyze_svariety(&data, cli.budget)?;
            t.kv("orbits", r.orbit_count)
                .kv("normal", verdict_text(&r.normal))
                .kv("small boundary", r.small_boundary)
                .kv("factorial", to_value(&r.factorial))
                .kv("type HV", r.type_hv);
            Ok(Report {
                json: to_value(&r),
                text: t.done(),
                inconclusive: r.is_inconclusive(),
            })
        }
        Command::Hv(a) => {
            let g = group(&a.group)?;
            let w = weight(&a.weight, "--weight")?;
            let r = hv_report(&g, &w).blame("--weight")?;
            t.kv("orbits", list(&r.orbits))
                .kv("orbit count", r.orbit_count)
                .kv("normal", r.normal)
                .kv("factorial", r.factorial);
            Ok(ok(to_value(&r), t.done()))
        }
        Command::MonoidPerfect(a) => {
            let g = group(&a.group)?;
            let gens = parse_weight_list(&a.gens).blame("--gens")?;
            let r = perfect_closure(&g, &gens, a.max_new, cli.budget).blame("--gens")?;
            t.kv("closure generators", list(&r.closure_generators))
                .kv(
                    "added",
                    if r.added.is_empty() {
                        "none".to_string()
                    } else {
                        list(&r.added)
                    },
                )
                .kv("perfect", to_value(&r.is_perfect))
                .kv("generates character group", r.generates_character_group)
                .kv("defines monoid", to_value(&r.defines_monoid))
                .kv("trivial monoid", to_value(&r.is_trivial_monoid))
                .kv("converged", r.converged);
            Ok(Report {
                json: to_value(&r),
                text: t.done(),
                inconclusive: r.is_inconclusive(),
            })
        }
        Command::MonoidNormal(a) => {
            let g = group(&a.group)?;
            let gens = parse_vector_list(&a.cone).blame("--cone")?;
            let k = cone_from_generators(&gens, g.rank()).blame("--cone")?;
            let v = normal_monoid_check(&g, &k).blame("--cone")?;
            let mut json = to_value(&v);
            json["cone"] = to_value(&k);
            json["group"] = json!(g.to_string());
            t.kv("-α_i in K", v.contains_neg_simple_roots)
                .kv("K ∩ C spans", v.dominant_part_generates)
                .kv("normal monoid", v.is_normal_monoid)
                .kv("central part pointed", v.central_part_pointed)
                .kv("K ∩ C_0 = 0", v.semisimple_dominant_trivial)
                .kv("has zero", v.has_zero);
            Ok(ok(json, t.done()))
        }
        Command::Ce(a) => {
            let g = group(&a.group)?;
            let nodes: BTreeSet<usize> = parse_nodes(&a.levi).blame("--levi")?;
            let data = ParabolicData::new(g, nodes).blame("--levi")?;
            let r = ce_report(&data, cli.orbit_cap)?;
            let subs: Vec<String> = r
                .orbit_subdiagrams
                .iter()
                .map(|s| {
                    format!(
                        "{{{}}}",
                        s.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            t.kv("orbit subdiagrams", subs.join(", "))
                .kv("orbit count", r.orbit_count);
            cone_text(&mut t, &r.sigma);
            t.kv("smooth", r.smooth)
                .kv("finitely many G-orbits", r.finite_g_orbits);
            Ok(ok(to_value(&r), t.done()))
        }
        Command::Sl2(a) => {
            let h: Height = match (&a.height, &a.monomials) {
                (Some(h), _) => h.parse().blame("--height")?,
                (None, Some(m)) => height_from_monomials(&parse_monomials(m).blame("--monomials")?)
                    .blame("--monomials")?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let orbits = orbit_structure(h);
            let basis = height_algebra_basis(h);
            let (show_orbits, show_basis) = match (a.orbits, a.basis) {
                (false, false) => (true, true),
                x => x,
            };
            let mut json = json!({ "height": h });
            if show_orbits {
                json["orbits"] = to_value(&orbits.orbits);
                json["smooth"] = json!(orbits.smooth);
            }
            if show_basis {
                json["basis"] = to_value(&basis);
            }
            let text = if a.orbits && !a.basis {
                format!("{}\n", orbits.orbits.join(", "))
            } else if a.basis && !a.orbits {
                format!("{}\n", list(&basis))
            } else {
                t.kv("height", h);
                if show_orbits {
                    t.kv("orbits", orbits.orbits.join(", "))
                        .kv("smooth", orbits.smooth);
                }
                if show_basis {
                    t.kv("basis", list(&basis));
                }
                t.done()
            };
            Ok(ok(json, text))
        }
    }
}

fn cone_text(t: &mut Lines<'_>, c: &PolyCone) {
    let facets: Vec<String> = c
        .facet_normals()
        .iter()
        .map(|f| format!("{f}·x >= 0"))
        .collect();
    t.kv(
        "rays",
        if c.rays().is_empty() {
            "none".to_string()
        } else {
            list(&c.rays())
        },
    )
    .kv(
        "lineality",
        if c.lineality().is_empty() {
            "none".to_string()
        } else {
            list(&c.lineality())
        },
    )
    .kv(
        "facets",
        if facets.is_empty() {
            "none".to_string()
        } else {
            facets.join(", ")
        },
    )
    .kv("pointed", c.is_pointed());
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) | Error::NotAHeightAlgebra(_) => EXIT_INVALID,
        Error::UnsupportedRank { .. }
        | Error::OrbitTooLarge { .. }
        | Error::RepresentationTooLarge { .. } => EXIT_INCONCLUSIVE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let style = Style::from_env();
    match run(&cli, &style) {
        Ok(r) => {
            let body = if cli.json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("json");
                s.push('\n');
                s
            } else {
                r.text
            };
            let mut out = io::stdout().lock();
            if out
                .write_all(body.as_bytes())
                .and_then(|()| out.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            if r.inconclusive {
                eprintln!("embedkit: verdict inconclusive within the configured limits");
                ExitCode::from(EXIT_INCONCLUSIVE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            match f.arg {
                Some(arg) => eprintln!("embedkit: {arg}: {}", f.err),
                None => eprintln!("embedkit: {}", f.err),
            }
            ExitCode::from(exit_code_for(&f.err))
        }
    }
}
