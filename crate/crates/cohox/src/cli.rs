//! Command-line front end. Every subcommand maps onto one library
//! operation (or a documented composition) and emits a report with a
//! `machine:` trailer. Exit codes: 0 success, 2 validation or parse
//! error, 3 budget exhaustion.

use crate::cech::{cech_cohomology_truncated, cochain_metric, TowerCochain};
use crate::complex::{SimplicialComplex, SimplicialMap, SimplicialPair};
use crate::cover::nerve;
use crate::error::{Budget, CohoxError};
use crate::fpgroup::{FpGroup, Subgroup};
use crate::hom_ext::{ext_group, hom_group};
use crate::io::format;
use crate::io::literal::parse_group_literal;
use crate::io::report::Report;
use crate::matrix::smith_normal_form;
use crate::moore::{moore_filtration, moore_space};
use crate::obstruction::{
    chi_class, classify_maps, difference_cochain, is_extensible, obstruction_cocycle,
    theta_finite_stage, SphereTarget,
};
use crate::orbits::aut_orbits_on_ext;
use crate::phantom::{cover_tower_system, example_7_11_pipeline, phantom_filtration};
use crate::telescope::degree_p_telescope;
use crate::tower::{finite_cap, lim1_vanishes, Lim1Verdict};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "cohox",
    version,
    about = "Exact-arithmetic simplicial/Cech cohomology, obstruction theory, and tower computations"
)]
pub struct Cli {
    /// Print only the machine trailer.
    #[arg(long, global = true)]
    pub machine_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Cohomology of a simplicial complex or pair.
    Cohomology {
        #[arg(long)]
        complex: PathBuf,
        /// Optional subcomplex for relative cohomology.
        #[arg(long)]
        rel: Option<PathBuf>,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        degree: usize,
    },
    /// Ext^1(A, B) in canonical form.
    Ext {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Cross-check against the cocycle-table construction
        /// (finite A and B only).
        #[arg(long)]
        cocycle: bool,
    },
    /// Hom(A, B) in canonical form.
    Hom {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Smith normal form of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Nerve of a cover.
    Nerve {
        #[arg(long)]
        cover: PathBuf,
    },
    /// Truncated Cech cohomology of a cover tower.
    Cech {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        degree: usize,
    },
    /// Distance between two tower cochains.
    Metric {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        a_level: usize,
        /// Comma-separated cochain values for a.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b_level: usize,
        #[arg(long)]
        b: String,
    },
    /// Obstruction cocycle of a skeleton map into a sphere model.
    Obstruct {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        rel: Option<PathBuf>,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Difference cochain of two maps agreeing over the subcomplex.
    Difference {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        rel: Option<PathBuf>,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Classifying class chi of a map into a sphere model.
    Chi {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        rel: Option<PathBuf>,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Homotopy classification of maps into a sphere model.
    Classify {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        rel: Option<PathBuf>,
        #[arg(long)]
        n: usize,
    },
    /// Finite-stage theta: push a level-alpha class into the colimit.
    Theta {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Moore space M(A, n) and its integral cohomology.
    Moore {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
    },
    /// Filtration of a torsion-free cokernel presentation by leading
    /// coordinates, with Moore stages.
    Filtration {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Degree-p mapping telescope of sphere stages.
    Telescope {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        stages: usize,
    },
    /// Mittag-Leffler / lim^1 analysis of a group tower.
    Lim1 {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Phantom filtration of a cover tower with exhaustion.
    Phantom {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Degree-p telescope pipeline certifying lim^1 != 0.
    #[command(name = "example711")]
    Example711 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: usize,
    },
    /// Orbits of Aut(A) on Ext^1(A, Z).
    Orbits {
        #[arg(long)]
        group: String,
    },
    /// Run the bundled example corpus against its golden trailers.
    Corpus {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn budget_from_env() -> Budget {
    std::env::var("COHOX_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .map(Budget)
        .unwrap_or_default()
}

fn read(path: &Path) -> Result<String, CohoxError> {
    std::fs::read_to_string(path).map_err(|e| CohoxError::Validation {
        name: "file",
        detail: format!("{}: {e}", path.display()),
    })
}

fn load_pair(complex: &Path, rel: Option<&Path>) -> Result<SimplicialPair, CohoxError> {
    let c = format::parse_scomplex(&read(complex)?)?;
    match rel {
        Some(r) => SimplicialPair::new(c, format::parse_scomplex(&read(r)?)?),
        None => Ok(SimplicialPair::absolute(c)),
    }
}

fn load_map(
    path: &Path,
    source: SimplicialComplex,
    target: SimplicialComplex,
) -> Result<SimplicialMap, CohoxError> {
    let vm = format::parse_smap(&read(path)?)?;
    SimplicialMap::new(source, target, vm)
}

fn parse_values(s: &str) -> Result<Vec<BigInt>, CohoxError> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<BigInt>().map_err(|_| CohoxError::Validation {
                name: "cochain",
                detail: format!("bad integer '{t}' in cochain values"),
            })
        })
        .collect()
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn subgroup_name(s: &Subgroup) -> String {
    s.as_group().0.canonical_name()
}

fn exec(cmd: &Command) -> Result<Report, CohoxError> {
    match cmd {
        Command::Cohomology {
            complex,
            rel,
            coeff,
            degree,
        } => {
            let pair = load_pair(complex, rel.as_deref())?;
            let g = parse_group_literal(coeff)?;
            let pc = crate::simplicial::cohomology(&pair, &g, *degree);
            let mut r = Report::new(format!("cohomology in degree {degree}"));
            r.line(format!(
                "H^{degree} with {} coefficients: {}",
                g.canonical_name(),
                pc.coh.group.canonical_name()
            ));
            r.line(format!("{} cells in degree {degree}", pc.cells.len()));
            r.kv("degree", degree);
            r.kv("canonical", pc.coh.group.canonical_name());
            r.kv("cells", pc.cells.len());
            Ok(r)
        }
        Command::Ext { a, b, cocycle } => {
            let ga = parse_group_literal(a)?;
            let gb = parse_group_literal(b)?;
            let e = ext_group(&ga, &gb);
            let mut r = Report::new("Ext^1 computation");
            r.line(format!(
                "Ext^1({}, {}) = {}",
                ga.canonical_name(),
                gb.canonical_name(),
                e.canonical_name()
            ));
            r.kv("canonical", e.canonical_name());
            if *cocycle {
                let c = crate::cocycle::cocycle_ext_group(&ga, &gb, budget_from_env())?;
                let agree = c.group.isomorphic(&e);
                r.line(format!(
                    "cocycle construction gives {} (match: {agree})",
                    c.group.canonical_name()
                ));
                r.kv("cocycle_canonical", c.group.canonical_name());
                r.kv("agree", agree);
            }
            Ok(r)
        }
        Command::Hom { a, b } => {
            let ga = parse_group_literal(a)?;
            let gb = parse_group_literal(b)?;
            let h = hom_group(&ga, &gb);
            let mut r = Report::new("Hom computation");
            r.line(format!(
                "Hom({}, {}) = {}",
                ga.canonical_name(),
                gb.canonical_name(),
                h.group.canonical_name()
            ));
            r.kv("canonical", h.group.canonical_name());
            Ok(r)
        }
        Command::Snf { matrix } => {
            let m = format::parse_intmatrix(&read(matrix)?)?;
            let snf = smith_normal_form(&m);
            let diag = snf.diagonal();
            let mut r = Report::new("Smith normal form");
            r.line(format!("{}x{} matrix, rank {}", m.rows(), m.cols(), snf.rank()));
            r.line(format!("invariant factors: {}", join(&diag, " ")));
            r.kv("rank", snf.rank());
            r.kv("diagonal", join(&diag, ","));
            Ok(r)
        }
        Command::Nerve { cover } => {
            let c = format::parse_cover(&read(cover)?)?;
            let n = nerve(&c);
            let top = n.dim().map(|d| d as i64).unwrap_or(-1);
            let f_vector: Vec<usize> = (0..=top.max(0) as usize)
                .map(|d| n.simplices_of_dim(d).len())
                .collect();
            let mut r = Report::new("nerve of cover");
            r.line(format!("{} members over {} points", c.members.len(), c.ground.len()));
            r.line(format!("nerve dimension {top}, f-vector ({})", join(&f_vector, ", ")));
            r.kv("dim", top);
            r.kv("f_vector", join(&f_vector, ","));
            Ok(r)
        }
        Command::Cech {
            tower,
            coeff,
            degree,
        } => {
            let t = format::load_tower(tower)?;
            let g = parse_group_literal(coeff)?;
            let sys = cech_cohomology_truncated(&t, &g, *degree)?;
            let mut r = Report::new("truncated Cech cohomology");
            r.line(format!(
                "colimit over {} levels: {}",
                t.levels.len(),
                sys.colimit.canonical_name()
            ));
            for (k, lvl) in sys.levels.iter().enumerate() {
                r.line(format!("level {k}: {}", lvl.coh.group.canonical_name()));
            }
            r.kv("degree", degree);
            r.kv("canonical", sys.colimit.canonical_name());
            r.kv("levels", t.levels.len());
            Ok(r)
        }
        Command::Metric {
            tower,
            coeff,
            degree,
            a_level,
            a,
            b_level,
            b,
        } => {
            let t = format::load_tower(tower)?;
            let g = parse_group_literal(coeff)?;
            let comps = g.canonical_rank();
            let mk = |level: usize, vals: &str| -> Result<TowerCochain, CohoxError> {
                if level >= t.levels.len() {
                    return Err(CohoxError::IndexOutOfRange {
                        index: level,
                        limit: t.levels.len(),
                    });
                }
                let values = parse_values(vals)?;
                let cells = nerve(&t.levels[level]).simplices_of_dim(*degree).len();
                if values.len() != cells * comps {
                    return Err(CohoxError::Validation {
                        name: "cochain",
                        detail: format!(
                            "expected {} values ({cells} cells x {comps} components), got {}",
                            cells * comps,
                            values.len()
                        ),
                    });
                }
                Ok(TowerCochain {
                    level,
                    degree: *degree,
                    values,
                })
            };
            let ca = mk(*a_level, a)?;
            let cb = mk(*b_level, b)?;
            let rho = cochain_metric(&ca, &cb, &t, &g)?;
            let mut r = Report::new("cochain metric");
            r.line(format!("rho(a, b) = {rho}"));
            r.kv("rho", rho);
            Ok(r)
        }
        Command::Obstruct {
            complex,
            rel,
            map,
            n,
        } => {
            let pair = load_pair(complex, rel.as_deref())?;
            let target = SphereTarget::new(*n)?;
            let f = load_map(map, pair.complex.skeleton(*n), target.model.clone())?;
            let c = obstruction_cocycle(&f, &pair, &target)?;
            let (ext, witnesses) = is_extensible(&c);
            let mut r = Report::new("obstruction cocycle");
            r.line(format!(
                "c(f) over {} ({}+1)-cells; extensible: {ext}",
                c.cells.len(),
                n
            ));
            for w in witnesses.iter().take(5) {
                r.line(format!("nonzero on cell {w:?}"));
            }
            r.kv("extensible", ext);
            r.kv("support", witnesses.len());
            r.kv("values", join(&c.values, ","));
            Ok(r)
        }
        Command::Difference {
            complex,
            rel,
            f,
            g,
            n,
        } => {
            let pair = load_pair(complex, rel.as_deref())?;
            let target = SphereTarget::new(*n)?;
            let fm = load_map(f, pair.complex.skeleton(*n), target.model.clone())?;
            let gm = load_map(g, pair.complex.skeleton(*n), target.model.clone())?;
            let d = difference_cochain(&fm, &gm, &pair, &target)?;
            let mut r = Report::new("difference cochain");
            r.line(format!(
                "d(f, g) over {} {}-cells; value sum {}",
                d.cells.len(),
                n,
                d.value_sum()
            ));
            r.kv("support", d.support().len());
            r.kv("value_sum", d.value_sum());
            r.kv("values", join(&d.values, ","));
            Ok(r)
        }
        Command::Chi {
            complex,
            rel,
            map,
            n,
        } => {
            let pair = load_pair(complex, rel.as_deref())?;
            let target = SphereTarget::new(*n)?;
            let f = load_map(map, pair.complex.skeleton(*n), target.model.clone())?;
            let (pc, class) = chi_class(&f, &pair, &target)?;
            let mut r = Report::new("classifying class chi");
            r.line(format!(
                "H^{n} = {}, chi(f) = ({})",
                pc.coh.group.canonical_name(),
                join(&class, ", ")
            ));
            r.kv("canonical", pc.coh.group.canonical_name());
            r.kv("class", join(&class, ","));
            Ok(r)
        }
        Command::Classify { complex, rel, n } => {
            let pair = load_pair(complex, rel.as_deref())?;
            let target = SphereTarget::new(*n)?;
            let cl = classify_maps(&pair, &target)?;
            let mut r = Report::new("homotopy classification");
            r.line(format!(
                "[X, S^{n}] = H^{n}(X, L; Z) = {}",
                cl.cohomology.coh.group.canonical_name()
            ));
            for (class, desc) in &cl.representatives {
                r.line(format!("class ({}) realized by {desc}", join(class, ", ")));
            }
            r.kv("canonical", cl.cohomology.coh.group.canonical_name());
            r.kv("representatives", cl.representatives.len());
            Ok(r)
        }
        Command::Theta {
            tower,
            alpha,
            map,
            n,
        } => {
            let t = format::load_tower(tower)?;
            let target = SphereTarget::new(*n)?;
            let lvl = t
                .levels
                .get(*alpha)
                .ok_or(CohoxError::IndexOutOfRange {
                    index: *alpha,
                    limit: t.levels.len(),
                })?;
            let p = load_map(map, nerve(lvl), target.model.clone())?;
            let (sys, class) = theta_finite_stage(&t, *alpha, &p, &target)?;
            let mut r = Report::new("finite-stage theta");
            r.line(format!(
                "colimit {} receives theta(p) = ({})",
                sys.colimit.canonical_name(),
                join(&class, ", ")
            ));
            r.kv("canonical", sys.colimit.canonical_name());
            r.kv("class", join(&class, ","));
            Ok(r)
        }
        Command::Moore { group, n } => {
            let a = parse_group_literal(group)?;
            let m = moore_space(&a, *n)?;
            let z = FpGroup::free(1);
            let hn = m.complex.with_coefficients(&z).cohomology(*n).group;
            let hn1 = m.complex.with_coefficients(&z).cohomology(n + 1).group;
            let mut r = Report::new("Moore space cohomology");
            r.line(format!(
                "M({}, {n}): one 0-cell, {} {n}-cells, {} ({}+1)-cells",
                a.canonical_name(),
                m.f0_rank,
                m.f1_rank,
                n
            ));
            r.line(format!("H^{n} = {}", hn.canonical_name()));
            r.line(format!("H^{} = {}", n + 1, hn1.canonical_name()));
            r.kv("h_n", hn.canonical_name());
            r.kv("h_n_plus_1", hn1.canonical_name());
            Ok(r)
        }
        Command::Filtration { presentation, n } => {
            let i = format::parse_intmatrix(&read(presentation)?)?;
            let f = moore_filtration(&i, *n)?;
            let mut r = Report::new("Moore filtration");
            r.line(format!("k-sequence: {}", join(&f.k, ", ")));
            for (m, g) in f.groups.iter().enumerate() {
                r.line(format!("stage {}: {}", m + 1, g.canonical_name()));
            }
            r.kv("k", join(&f.k, ","));
            r.kv("stages", join(f.groups.iter().map(|g| g.canonical_name()), ";"));
            Ok(r)
        }
        Command::Telescope { p, d, stages } => {
            let tel = degree_p_telescope(*p, *d, *stages)?;
            let z = FpGroup::free(1);
            let coh = tel.cohomology(&z, *d);
            let tower = tel.truncation_tower(&z, *d)?;
            let stage_names = match &tower {
                crate::tower::GroupTower::Explicit { groups, .. } => {
                    join(groups.iter().map(|g| g.canonical_name()), ";")
                }
                _ => String::new(),
            };
            let mut r = Report::new("degree-p telescope");
            r.line(format!(
                "{stages}-stage telescope of S^{d} with degree-{p} bonding"
            ));
            r.line(format!("H^{d}(total) = {}", coh.group.canonical_name()));
            r.line(format!("truncation tower stages: {stage_names}"));
            r.kv("total", coh.group.canonical_name());
            r.kv("tower", stage_names);
            Ok(r)
        }
        Command::Lim1 { tower, cap } => {
            let t = format::parse_gtower(&read(tower)?)?;
            let cap = cap.or_else(|| finite_cap(&t)).unwrap_or(16);
            let verdict = lim1_vanishes(&t, cap);
            let mut r = Report::new("lim^1 analysis");
            let (name, detail) = match &verdict {
                Lim1Verdict::Vanishes { stabilized_at } => (
                    "vanishes",
                    format!("image chain stabilizes at step {stabilized_at}"),
                ),
                Lim1Verdict::DoesNotVanish {
                    descent_upto,
                    witness,
                } => (
                    "does_not_vanish",
                    format!(
                        "strict image descent through {descent_upto} steps, witness ({})",
                        join(witness, ", ")
                    ),
                ),
                Lim1Verdict::Undetermined => (
                    "undetermined",
                    format!("no certificate within cap {cap}"),
                ),
            };
            r.line(format!("lim^1 {name}: {detail}"));
            r.kv("verdict", name);
            r.kv("cap", cap);
            Ok(r)
        }
        Command::Phantom {
            tower,
            coeff,
            degree,
            depth,
        } => {
            let t = format::load_tower(tower)?;
            let g = parse_group_literal(coeff)?;
            let sys = cover_tower_system(&t, &g, *degree)?;
            let ph = phantom_filtration(&sys, *depth)?;
            let mut r = Report::new("phantom filtration");
            r.line(format!(
                "ambient H^{degree} = {}",
                sys.absolute.canonical_name()
            ));
            for (k, level) in ph.levels.iter().enumerate() {
                r.line(format!("Ph^{k} = {}", subgroup_name(level)));
            }
            r.kv("ambient", sys.absolute.canonical_name());
            r.kv("levels", join(ph.levels.iter().map(subgroup_name), ";"));
            r.kv(
                "ph0_trivial",
                ph.levels[0].is_trivial_subgroup(),
            );
            Ok(r)
        }
        Command::Example711 { p, d, n } => {
            let rep = example_7_11_pipeline(*p, *d, *n)?;
            let vanishes = matches!(rep.lim1, Lim1Verdict::Vanishes { .. });
            let mut r = Report::new("degree-p telescope pipeline");
            r.line(format!(
                "telescope of S^{d} with degree-{p} bonding, {n} stages"
            ));
            r.line(format!(
                "truncation tower: {} (Z with x{p} bonding: {})",
                join(&rep.stage_groups, ", "),
                rep.tower_is_z_times_p
            ));
            r.line(match &rep.lim1 {
                Lim1Verdict::Vanishes { stabilized_at } => {
                    format!("lim^1 vanishes (stabilized at {stabilized_at})")
                }
                Lim1Verdict::DoesNotVanish { witness, .. } => format!(
                    "lim^1 does not vanish; descent witness ({})",
                    join(witness, ", ")
                ),
                Lim1Verdict::Undetermined => "lim^1 undetermined".into(),
            });
            r.kv("tower_is_z_times_p", rep.tower_is_z_times_p);
            r.kv("lim1_vanishes", vanishes);
            Ok(r)
        }
        Command::Orbits { group } => {
            let a = parse_group_literal(group)?;
            let o = aut_orbits_on_ext(&a, budget_from_env())?;
            let sizes: Vec<usize> = o.orbits.iter().map(|orb| orb.len()).collect();
            let mut r = Report::new("automorphism orbits on Ext^1(A, Z)");
            r.line(format!(
                "Ext^1({}, Z) = {}, {} automorphisms",
                a.canonical_name(),
                o.ext.canonical_name(),
                o.automorphism_count
            ));
            r.line(format!("{} orbits of sizes {}", sizes.len(), join(&sizes, ", ")));
            r.kv("ext", o.ext.canonical_name());
            r.kv("automorphisms", o.automorphism_count);
            r.kv("orbit_count", sizes.len());
            r.kv("orbit_sizes", join(&sizes, ","));
            Ok(r)
        }
        Command::Corpus { dir } => corpus_run(dir.as_deref()),
    }
}

fn default_corpus_dir() -> PathBuf {
    for cand in ["corpus", "crates/cohox/corpus"] {
        let p = PathBuf::from(cand);
        if p.is_dir() {
            return p;
        }
    }
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

/// Run every `<name>.args` entry in the corpus directory and compare
/// the machine trailer with `golden/<name>.txt`.
pub fn corpus_run(dir: Option<&Path>) -> Result<Report, CohoxError> {
    let dir = dir.map(Path::to_path_buf).unwrap_or_else(default_corpus_dir);
    let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| CohoxError::Validation {
            name: "corpus",
            detail: format!("{}: {e}", dir.display()),
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "args"))
        .collect();
    entries.sort();
    if entries.is_empty() {
        return Err(CohoxError::Validation {
            name: "corpus",
            detail: format!("empty corpus: no .args entries in {}", dir.display()),
        });
    }
    let mut r = Report::new("corpus run");
    let mut failures = Vec::new();
    for entry in &entries {
        let name = entry.file_stem().unwrap().to_string_lossy().to_string();
        let args_text = read(entry)?;
        let mut argv = vec!["cohox".to_string(), "--machine-only".to_string()];
        argv.extend(args_text.split_whitespace().map(str::to_string));
        // entry paths are relative to the corpus directory
        let (out, code) = run_in_dir(&argv, &dir);
        let golden_path = dir.join("golden").join(format!("{name}.txt"));
        let golden = read(&golden_path)?;
        if code != EXIT_OK {
            failures.push(format!("{name}: exit {code}"));
            r.line(format!("{name}: FAIL (exit {code})"));
        } else if out.trim_end() != golden.trim_end() {
            failures.push(format!(
                "{name}: got '{}', golden '{}'",
                out.trim_end(),
                golden.trim_end()
            ));
            r.line(format!("{name}: DIFF"));
        } else {
            r.line(format!("{name}: ok"));
        }
    }
    r.kv("entries", entries.len());
    r.kv("failures", failures.len());
    if failures.is_empty() {
        Ok(r)
    } else {
        Err(CohoxError::Validation {
            name: "corpus",
            detail: failures.join("; "),
        })
    }
}

fn run_in_dir(argv: &[String], dir: &Path) -> (String, i32) {
    // rewrite file arguments relative to the corpus dir by running
    // with prefixed paths: the corpus entries use bare file names
    let adjusted: Vec<String> = argv
        .iter()
        .map(|a| {
            if a.contains('.') && dir.join(a).is_file() {
                dir.join(a).to_string_lossy().to_string()
            } else {
                a.clone()
            }
        })
        .collect();
    run(adjusted)
}

/// Parse and execute an argv; returns (rendered output, exit code).
/// Never panics: library panics are converted to validation failures.
pub fn run<I, T>(argv: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return (e.to_string(), EXIT_VALIDATION),
    };
    let prev_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| exec(&cli.command)));
    std::panic::set_hook(prev_hook);
    match outcome {
        Ok(Ok(report)) => (report.render(cli.machine_only), EXIT_OK),
        Ok(Err(e)) => {
            let code = match e {
                CohoxError::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_VALIDATION,
            };
            (format!("error: {e}\n"), code)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal invariant violated".to_string());
            (format!("error: {msg}\n"), EXIT_VALIDATION)
        }
    }
}
