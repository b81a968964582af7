//! Command-line drive: parse documents, dispatch computations, emit
//! deterministic reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torsade::cover;
use torsade::gamma::{twisted_conjugate_equiv, Cocycle, GammaGroup};
use torsade::parse::{self, Limits};
use torsade::report::{join_ids, ReportWriter};
use torsade::torsor::Torsor;
use torsade::twist;
use torsade::verify;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Parser)]
#[command(name = "torsade", version, about = "torsors, H1 and twisting over finite group actions")]
struct Cli {
    /// Cap on group orders; every computation is exhaustive.
    #[arg(long, global = true, default_value_t = torsade::group::DEFAULT_MAX_ORDER, env = "TORSOR_MAX_ORDER")]
    maxorder: usize,
    /// Worker threads; output is byte-identical for any value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The pointed set H¹(Γ, G) by exhaustive cocycle enumeration.
    H1 {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        group: PathBuf,
        /// `trivial` or a path to an action file.
        #[arg(long, default_value = "trivial")]
        action: String,
    },
    /// The torsor of isomorphisms P → Q (P twisted by Q).
    Twist {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Decide whether two torsors are isomorphic. Exit 0 yes, 3 no.
    Isom {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Components, stabilizers and fixed points of Isom(P, P).
    Selftwist {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        group: PathBuf,
        /// Optional cocycle; defaults to the identity (requires Γ = G).
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    /// Search for a specialization isomorphic to the target torsor.
    /// Exit 0 exists, 3 not, 2 precondition failure.
    Specialize {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = false)]
        up_to_conjugacy: bool,
    },
    /// Degree-n specialization test through an ambient symmetric group.
    Nongalois {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        sn: PathBuf,
        #[arg(long)]
        nu: PathBuf,
        #[arg(long)]
        psi: PathBuf,
    },
    /// Run a verification suite. Exit 1 if any claim fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

enum Failure {
    /// Bad input or unsatisfied precondition: exit 2.
    Input(String),
    /// A verified-by-construction invariant broke: exit 1.
    Internal(String),
    /// Negative but well-formed answer: exit 3.
    Negative,
}

impl From<torsade::DocError> for Failure {
    fn from(e: torsade::DocError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(&cli));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative) => ExitCode::from(3),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("invariant breach: {msg}");
            ExitCode::from(1)
        }
    }
}

fn digest_input(w: &mut ReportWriter, role: &str, path: &PathBuf) -> Result<(), Failure> {
    let bytes = std::fs::read(path).map_err(|e| {
        Failure::Input(format!("cannot read {}: {e}", path.display()))
    })?;
    w.input_digest(role, &path.display().to_string(), &bytes);
    Ok(())
}

fn load_cocycle_checked(path: &PathBuf, limits: &Limits) -> Result<Cocycle, Failure> {
    Ok(parse::load_cocycle(path, limits)?)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let limits = Limits { max_order: cli.maxorder };
    if cli.maxorder < 2 {
        return Err(Failure::Input("order cap must be at least 2".into()));
    }
    match &cli.command {
        Command::H1 { gamma, group, action } => {
            let mut w = ReportWriter::new("h1");
            digest_input(&mut w, "gamma", gamma)?;
            digest_input(&mut w, "group", group)?;
            w.meta("action", action);
            w.meta("maxorder", &cli.maxorder.to_string());
            let gamma_g = parse::load_group(gamma, &limits)?;
            let group_g = parse::load_group(group, &limits)?;
            let gg = if action == "trivial" {
                GammaGroup::trivial_action(gamma_g, group_g)
            } else {
                parse::load_action(&PathBuf::from(action), gamma_g, group_g)?
            };
            let mut classes = torsade::gamma::h1(&gg);
            classes.sort_by(|a, b| {
                a.size()
                    .cmp(&b.size())
                    .then(a.representative.values().cmp(b.representative.values()))
            });
            w.record(&format!("classes {}", classes.len()));
            for (i, cl) in classes.iter().enumerate() {
                let rep = cl.representative.values();
                match cli.format {
                    Format::Text => w.record(&format!(
                        "class {} size={} trivial={} rep=[{}]",
                        i + 1,
                        cl.size(),
                        cl.is_trivial_class,
                        rep.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
                    )),
                    Format::Machine => w.record(&format!(
                        "class index={} size={} trivial={} rep={}",
                        i + 1,
                        cl.size(),
                        cl.is_trivial_class,
                        join_ids(rep)
                    )),
                }
            }
            Ok(w.finish())
        }
        Command::Twist { p, q } => {
            let mut w = ReportWriter::new("twist");
            digest_input(&mut w, "p", p)?;
            digest_input(&mut w, "q", q)?;
            let cp = load_cocycle_checked(p, &limits)?;
            let cq = load_cocycle_checked(q, &limits)?;
            if cp.gg() != cq.gg() {
                return Err(Failure::Input("cocycles live over different gamma-groups".into()));
            }
            let tp = Torsor::from_cocycle(&cp);
            let tq = Torsor::from_cocycle(&cq);
            let tt = twist::twist_torsor(&tp, &tq)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            let gs = tt.as_gamma_set();
            w.record(&format!("points {}", gs.size()));
            for orbit in gs.orbits() {
                w.record(&format!("component rep={} size={}", orbit[0], orbit.len()));
            }
            let fixed = gs.fixed_points();
            w.record(&format!("fixed {}", fixed.len()));
            w.record(&format!("isomorphic {}", !fixed.is_empty()));
            Ok(w.finish())
        }
        Command::Isom { p, q } => {
            let mut w = ReportWriter::new("isom");
            digest_input(&mut w, "p", p)?;
            digest_input(&mut w, "q", q)?;
            let cp = load_cocycle_checked(p, &limits)?;
            let cq = load_cocycle_checked(q, &limits)?;
            if cp.gg() != cq.gg() {
                return Err(Failure::Input("cocycles live over different gamma-groups".into()));
            }
            match twisted_conjugate_equiv(&cp, &cq) {
                Some(g) => {
                    w.record(&format!("isomorphic true witness={g}"));
                    Ok(w.finish())
                }
                None => {
                    // still emit the report before the negative exit
                    w.record("isomorphic false");
                    print!("{}", w.finish());
                    Err(Failure::Negative)
                }
            }
        }
        Command::Selftwist { gamma, group, cocycle } => {
            let mut w = ReportWriter::new("selftwist");
            digest_input(&mut w, "gamma", gamma)?;
            digest_input(&mut w, "group", group)?;
            let gamma_g = parse::load_group(gamma, &limits)?;
            let group_g = parse::load_group(group, &limits)?;
            let c = match cocycle {
                Some(path) => {
                    digest_input(&mut w, "cocycle", path)?;
                    load_cocycle_checked(path, &limits)?
                }
                None => {
                    if gamma_g != group_g {
                        return Err(Failure::Input(
                            "default identity cocycle needs gamma = group; pass --cocycle".into(),
                        ));
                    }
                    let gg = GammaGroup::trivial_action(gamma_g.clone(), group_g.clone());
                    Cocycle::new(gg, group_g.elements().collect())
                        .map_err(|e| Failure::Input(e.to_string()))?
                }
            };
            let report =
                twist::self_twist_decomposition(&c).map_err(|e| Failure::Internal(e.to_string()))?;
            w.record(&format!("components {}", report.components.len()));
            for (orbit, stab) in &report.components {
                w.record(&format!(
                    "component rep={} size={} stabilizer={}",
                    orbit[0],
                    orbit.len(),
                    stab.order()
                ));
            }
            w.record(&format!("fixed {}", report.fixed_count));
            Ok(w.finish())
        }
        Command::Specialize { cover: cover_path, target, up_to_conjugacy } => {
            let mut w = ReportWriter::new("specialize");
            digest_input(&mut w, "cover", cover_path)?;
            digest_input(&mut w, "target", target)?;
            w.meta("maxorder", &cli.maxorder.to_string());
            let cover = parse::load_cover(cover_path, &limits)?;
            let psi = load_cocycle_checked(target, &limits)?;
            if *psi.gg() != cover.target_gamma_group() {
                return Err(Failure::Input(
                    "target cocycle must be a trivial-action cocycle over the cover's groups".into(),
                ));
            }
            let secs = cover::sections(&cover, *up_to_conjugacy);
            w.record(&format!("sections {}", secs.len()));
            let star = cover::star_condition(&cover, &psi)
                .map_err(|e| Failure::Input(e.to_string()))?;
            w.record(&format!("star {star}"));
            let twisted = cover::specialization_exists_twisted(&cover, &psi)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let oracle = cover::specialization_exists_oracle(&cover, &psi)
                .map_err(|e| Failure::Input(e.to_string()))?;
            if twisted.as_ref().map(|s| s.hom().map().to_vec())
                != oracle.as_ref().map(|s| s.hom().map().to_vec())
            {
                return Err(Failure::Internal(
                    "twisted fixed-point route disagrees with section enumeration".into(),
                ));
            }
            match twisted {
                Some(s) => {
                    w.record(&format!("exists true section={}", join_ids(s.hom().map())));
                    Ok(w.finish())
                }
                None => {
                    w.record("exists false");
                    print!("{}", w.finish());
                    Err(Failure::Negative)
                }
            }
        }
        Command::Nongalois { cover: cover_path, sn, nu, psi } => {
            let mut w = ReportWriter::new("nongalois");
            digest_input(&mut w, "cover", cover_path)?;
            digest_input(&mut w, "sn", sn)?;
            digest_input(&mut w, "nu", nu)?;
            digest_input(&mut w, "psi", psi)?;
            let cover = parse::load_cover(cover_path, &limits)?;
            let sn_g = parse::load_group(sn, &limits)?;
            let nu_h = parse::load_hom(nu, cover.group().clone(), sn_g)?;
            let psi_c = load_cocycle_checked(psi, &limits)?;
            let outcome = cover::nongalois_test(&cover, &nu_h, &psi_c)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let oracle = cover::nongalois_oracle(&cover, &nu_h, &psi_c)
                .map_err(|e| Failure::Input(e.to_string()))?;
            if outcome.isomorphic_as_covers != oracle.is_some() {
                return Err(Failure::Internal(
                    "embedding route disagrees with the conjugacy oracle".into(),
                ));
            }
            w.record(&format!("isomorphic {}", outcome.isomorphic_as_covers));
            for (eta, s) in &outcome.witnesses {
                w.record(&format!(
                    "witness eta={} section={}",
                    join_ids(eta.map()),
                    join_ids(s.hom().map())
                ));
            }
            if outcome.isomorphic_as_covers {
                Ok(w.finish())
            } else {
                print!("{}", w.finish());
                Err(Failure::Negative)
            }
        }
        Command::Verify { suite } => {
            let mut w = ReportWriter::new("verify");
            w.meta("suite", suite);
            w.meta("maxorder", &cli.maxorder.to_string());
            let Some(claims) = verify::run_suite(suite, cli.maxorder) else {
                return Err(Failure::Input(format!(
                    "unknown suite `{suite}`; known: {} and `all`",
                    verify::SUITES.join(", ")
                )));
            };
            let all_pass = claims.iter().all(|c| c.passing());
            for claim in &claims {
                for line in claim.render().lines() {
                    w.record(line);
                }
            }
            if all_pass {
                Ok(w.finish())
            } else {
                print!("{}", w.finish());
                Err(Failure::Internal("one or more claims failed".into()))
            }
        }
    }
}
