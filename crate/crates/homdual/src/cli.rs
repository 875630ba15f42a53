//! Command-line front end. Every verb is a thin adapter over one library
//! operation family.
//!
//! Exit status: 0 affirmative, 1 negative verdict, 2 input error,
//! 3 resource guard.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use homdual_core::algebra::{exponential, product, sum};
use homdual_core::canon::{enumerate_structures, DEFAULT_ENUM_CEILING};
use homdual_core::duality::{
    animal_dual, bear_dual, brute_duality_check_in, dual_set, finite_duality_counterexample, mosquito_dual,
    rhs_duality_decide_bounded, tree_bounds, verify_duality_pair, BearFamily, MosquitoFamily,
};
use homdual_core::fixtures::{gen_fixture, oriented_path, FixtureKind};
use homdual_core::graph::{classify, components, directed_shadow, height_labelling, incidence_graph, shadow};
use homdual_core::heyting::{
    chain, connected_decomposition, connected_elements, distributivity_witness, divisor_lattice,
    gaps_from_duality_pairs, heyting_table, lattice_duality_pairs, lattice_gaps, lattice_transversal_dual, m3, n5,
    subset_lattice, FiniteLattice,
};
use homdual_core::hom::{core, core_of, count_homs, find_hom, hom_exists, is_core, iso};
use homdual_core::order::{
    cutting_point_check_in, encode_3sat, gcsp_direct, gcsp_via_forbidden, mac_decide, maximality_counterexample, Mac,
};
use homdual_core::trees::d_star;
use homdual_core::{Signature, Structure};

use crate::dimacs::parse_dimacs;
use crate::error::{Error, Result};
use crate::lattice_io::{parse_lattice, serialize_lattice};
use crate::manifest::write_duality;
use crate::text::{dump_multigraph, parse_structure, serialize_named};

/// Environment variable overriding the enumeration ceiling (a count of
/// labelled structures).
pub const ENUM_CEILING_VAR: &str = "HOMDUAL_ENUM_CEILING";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Manifest,
}

#[derive(Debug, Parser)]
#[command(name = "homdual", version, about = "Homomorphisms, cores, and dualities of finite relational structures")]
pub struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker count. Results do not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Does A map to B?
    Hom {
        a: PathBuf,
        b: PathBuf,
        /// Print the lexicographically least homomorphism.
        #[arg(long)]
        witness: bool,
        /// Print the number of homomorphisms.
        #[arg(long)]
        count: bool,
    },
    /// The core of A and a retraction onto it.
    Core { a: PathBuf },
    /// Are A and B isomorphic?
    Iso { a: PathBuf, b: PathBuf },
    /// Structural flags and the height labelling.
    Classify { a: PathBuf },
    /// The (directed) shadow as a multigraph dump.
    Shadow {
        a: PathBuf,
        #[arg(long)]
        directed: bool,
    },
    /// The incidence multigraph.
    Incidence { a: PathBuf },
    /// Connected components.
    Components { a: PathBuf },
    /// Disjoint union.
    Sum {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
    },
    /// Categorical product.
    Product {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
    },
    /// The exponential C^B.
    Power { c: PathBuf, b: PathBuf },
    /// The dual of a tree.
    DualTree {
        f: PathBuf,
        /// bear, mosquito, animal:bear, or animal:mosquito.
        #[arg(long, default_value = "bear")]
        method: String,
        /// Skip coring the result.
        #[arg(long)]
        raw: bool,
    },
    /// The transversal construction for a set of forests.
    DualSet {
        #[arg(required = true)]
        forests: Vec<PathBuf>,
        /// Also write a duality directory here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Is (forbidden, dual) a finite duality?
    CheckDuality {
        #[arg(long, num_args = 1.., required = true)]
        forbidden: Vec<PathBuf>,
        #[arg(long, num_args = 1.., required = true)]
        dual: Vec<PathBuf>,
        /// Also check every structure with at most this many vertices.
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Is the set a maximal antichain?
    Mac {
        #[arg(required = true)]
        q: Vec<PathBuf>,
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Does G map to the template set? The last file is G.
    Gcsp {
        /// Templates are the duals of the given forests.
        #[arg(long, conflicts_with = "duals", required_unless_present = "duals")]
        forbidden: bool,
        /// Templates are the given structures.
        #[arg(long)]
        duals: bool,
        #[arg(num_args = 2.., required = true)]
        files: Vec<PathBuf>,
    },
    /// Tree-count and edge bounds for a type and depth.
    Bounds {
        #[arg(long = "type")]
        ty: String,
        #[arg(short = 'd')]
        depth: usize,
    },
    /// All structures of a type with at most n vertices.
    Enumerate {
        #[arg(long = "type")]
        ty: String,
        #[arg(short = 'n')]
        n: usize,
        /// One structure per isomorphism class.
        #[arg(long)]
        iso: bool,
    },
    /// Encode a 3-CNF file as a pair of structures of type (3,3,3,3).
    #[command(name = "encode-3sat")]
    Encode3Sat {
        file: PathBuf,
        /// Decide the instance by homomorphism search.
        #[arg(long)]
        solve: bool,
    },
    /// A named structure: path K, tournament K, komarek-path M N,
    /// komarek-dual M N, complete K, cycle K, oriented-path PATTERN,
    /// bottom, top, d-star.
    Fixture {
        kind: String,
        params: Vec<String>,
        #[arg(long = "type", default_value = "2")]
        ty: String,
    },
    /// Decide, for trees up to an edge bound, whether the structures are
    /// the dual side of a finite duality.
    Rhs {
        #[arg(required = true)]
        duals: Vec<PathBuf>,
        #[arg(short = 'e', long = "edges")]
        edges: usize,
    },
    /// Check that [T x D, T] and [D, T + D] hold nothing strictly inside.
    CuttingPoint {
        t: PathBuf,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Finite-lattice tools.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Distributivity and the Heyting implication.
    Check { file: PathBuf },
    /// The Heyting implication table.
    Heyting { file: PathBuf },
    /// Connected elements and their decompositions.
    Connected { file: PathBuf },
    /// Duality pairs.
    Pairs { file: PathBuf },
    /// Gaps, and whether they match the duality-pair description.
    Gaps { file: PathBuf },
    /// Dual set of pairwise incomparable elements, using the maximal
    /// connected decompositions.
    Transversal {
        file: PathBuf,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// chain N, subsets K, divisors N, m3, n5.
    Fixture { kind: String, param: Option<u64> },
}

/// A command's result before formatting.
#[derive(Debug, Default)]
struct Report {
    status: u8,
    /// Human-readable lines for text mode.
    lines: Vec<String>,
    /// `key: value` pairs for manifest mode.
    fields: Vec<(String, String)>,
    structures: Vec<(String, Structure)>,
    /// Verbatim text appended in both modes.
    raw: Option<String>,
}

impl Report {
    fn verdict(yes: bool) -> Self {
        Report { status: if yes { 0 } else { 1 }, ..Report::default() }
    }

    fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    fn both(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let v = value.to_string();
        self.lines.push(format!("{key}: {v}"));
        self.fields.push((key.to_string(), v));
        self
    }

    fn structure(&mut self, label: impl Into<String>, s: Structure) -> &mut Self {
        self.structures.push((label.into(), s));
        self
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for l in &self.lines {
                    writeln!(out, "{l}").unwrap();
                }
            }
            Format::Manifest => {
                for (k, v) in &self.fields {
                    writeln!(out, "{k}: {v}").unwrap();
                }
            }
        }
        for (k, (label, s)) in self.structures.iter().enumerate() {
            if k > 0 || !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&serialize_named(s, Some(label)));
        }
        if let Some(r) = &self.raw {
            out.push_str(r);
        }
        out
    }
}

fn load(path: &Path) -> Result<Structure> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_structure(&text)
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<Structure>> {
    paths.iter().map(|p| load(p)).collect()
}

fn load_lattice(path: &Path) -> Result<FiniteLattice> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_lattice(&text)
}

fn parse_type(s: &str) -> Result<Signature> {
    let arities = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Usage(format!("`{t}` is not an arity"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Signature::new(arities)?)
}

fn ceiling() -> Result<u128> {
    match std::env::var(ENUM_CEILING_VAR) {
        Ok(v) => {
            v.trim().parse().map_err(|_| Error::Usage(format!("{ENUM_CEILING_VAR} must be a nonnegative integer")))
        }
        Err(_) => Ok(DEFAULT_ENUM_CEILING),
    }
}

fn universe(sig: &Signature, n: usize) -> Result<Vec<Structure>> {
    Ok(enumerate_structures(sig, n, true, ceiling()?)?)
}

fn map_text(a: &Structure, b: &Structure, m: &[usize]) -> String {
    let parts: Vec<String> = m.iter().enumerate().map(|(v, &w)| format!("{}->{}", a.name(v), b.name(w))).collect();
    parts.join(" ")
}

fn param<T: std::str::FromStr>(params: &[String], k: usize, what: &str) -> Result<T> {
    params
        .get(k)
        .ok_or_else(|| Error::Usage(format!("missing parameter {what}")))?
        .parse()
        .map_err(|_| Error::Usage(format!("parameter {what} is not a number")))
}

fn fixture(kind: &str, params: &[String], ty: &str) -> Result<Structure> {
    let sig = parse_type(ty)?;
    let kind = match kind {
        "path" => FixtureKind::Path(param(params, 0, "K")?),
        "tournament" => FixtureKind::Tournament(param(params, 0, "K")?),
        "komarek-path" => FixtureKind::KomarekPath(param(params, 0, "M")?, param(params, 1, "N")?),
        "komarek-dual" => FixtureKind::KomarekDual(param(params, 0, "M")?, param(params, 1, "N")?),
        "complete" => FixtureKind::Complete(param(params, 0, "K")?),
        "cycle" => FixtureKind::DirectedCycle(param(params, 0, "K")?),
        "bottom" => FixtureKind::Bottom,
        "top" => FixtureKind::Top,
        "oriented-path" => {
            let pattern = params.first().ok_or_else(|| Error::Usage("missing PATTERN".into()))?;
            return Ok(oriented_path(pattern)?);
        }
        "d-star" => return Ok(d_star(&sig)?),
        other => return Err(Error::Usage(format!("unknown fixture `{other}`"))),
    };
    Ok(gen_fixture(&sig, &kind)?)
}

// removes elements below another one, then duplicates up to isomorphism
fn maximal_cores(ds: &[Structure]) -> Result<Vec<Structure>> {
    let cores: Vec<Structure> = ds.iter().map(core_of).collect();
    let mut out: Vec<Structure> = Vec::new();
    for (k, c) in cores.iter().enumerate() {
        let dominated = cores
            .iter()
            .enumerate()
            .any(|(j, d)| j != k && hom_exists(c, d).unwrap_or(false) && (!hom_exists(d, c).unwrap_or(true) || j < k));
        if !dominated {
            out.push(c.clone());
        }
    }
    Ok(out)
}

fn same_sets(a: &[Structure], b: &[Structure]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for x in a {
        let mut hit = false;
        for y in b {
            if iso(x, y)?.is_some() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn execute(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Hom { a, b, witness, count } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let found = if witness { find_hom(&a, &b)? } else { hom_exists(&a, &b)?.then(Vec::new) };
            let mut r = Report::verdict(found.is_some());
            r.both("hom", if found.is_some() { "yes" } else { "no" });
            if let Some(m) = found.filter(|_| witness) {
                r.both("witness", map_text(&a, &b, &m));
            }
            if count {
                r.both("count", count_homs(&a, &b, u64::MAX)?);
            }
            Ok(r)
        }
        Command::Core { a } => {
            let a = load(&a)?;
            let c = core(&a);
            let mut r = Report::verdict(true);
            r.field("core-size", c.core.len());
            r.field("is-core", c.core.len() == a.len());
            let retraction: Vec<String> =
                c.retraction.iter().enumerate().map(|(v, &w)| format!("{}->{}", a.name(v), c.core.name(w))).collect();
            r.field("retraction", retraction.join(" "));
            r.structure("core", c.core);
            Ok(r)
        }
        Command::Iso { a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let m = iso(&a, &b)?;
            let mut r = Report::verdict(m.is_some());
            r.both("iso", if m.is_some() { "yes" } else { "no" });
            if let Some(m) = m {
                r.both("map", map_text(&a, &b, &m));
            }
            Ok(r)
        }
        Command::Classify { a } => {
            let a = load(&a)?;
            let f = classify(&a);
            let mut r = Report::verdict(true);
            for (k, v) in [
                ("connected", f.connected),
                ("tree", f.tree),
                ("forest", f.forest),
                ("path", f.path),
                ("acyclic", f.acyclic),
                ("balanced", f.balanced),
                ("core", is_core(&a)),
            ] {
                r.both(k, v);
            }
            if let Some(h) = height_labelling(&a) {
                let labels: Vec<String> = (0..a.len())
                    .map(|v| {
                        let l: Vec<String> = h.label(v).iter().map(i64::to_string).collect();
                        format!("{}=({})", a.name(v), l.join(","))
                    })
                    .collect();
                r.both("height", labels.join(" "));
            }
            Ok(r)
        }
        Command::Shadow { a, directed } => {
            let a = load(&a)?;
            let g = if directed { directed_shadow(&a) } else { shadow(&a) };
            Ok(Report { raw: Some(dump_multigraph(&g)), ..Report::verdict(true) })
        }
        Command::Incidence { a } => {
            let a = load(&a)?;
            Ok(Report { raw: Some(dump_multigraph(&incidence_graph(&a))), ..Report::verdict(true) })
        }
        Command::Components { a } => {
            let a = load(&a)?;
            let mut r = Report::verdict(true);
            let comps = components(&a);
            r.field("components", comps.len());
            for (k, c) in comps.into_iter().enumerate() {
                r.structure(format!("component{k}"), c);
            }
            Ok(r)
        }
        Command::Sum { parts } => {
            let mut r = Report::verdict(true);
            r.structure("sum", sum(&load_all(&parts)?)?);
            Ok(r)
        }
        Command::Product { parts } => {
            let mut r = Report::verdict(true);
            r.structure("product", product(&load_all(&parts)?)?);
            Ok(r)
        }
        Command::Power { c, b } => {
            let mut r = Report::verdict(true);
            r.structure("power", exponential(&load(&c)?, &load(&b)?)?);
            Ok(r)
        }
        Command::DualTree { f, method, raw } => {
            // the bear and animal constructions want a core tree
            let f = core_of(&load(&f)?);
            let d = match method.as_str() {
                "bear" => bear_dual(&f)?,
                "mosquito" => mosquito_dual(&f)?,
                "animal:bear" => animal_dual(&f, &BearFamily)?,
                "animal:mosquito" => animal_dual(&f, &MosquitoFamily)?,
                other => return Err(Error::Usage(format!("unknown method `{other}`"))),
            };
            let d = if raw { d } else { core_of(&d) };
            let mut r = Report::verdict(true);
            r.field("method", method);
            r.field("vertices", d.len());
            r.structure("dual", d);
            Ok(r)
        }
        Command::DualSet { forests, out_dir } => {
            let fset = load_all(&forests)?;
            let fd = dual_set(&fset)?;
            let mut r = Report::verdict(true);
            r.both("components", fd.components.len());
            r.both("transversals", fd.transversals.len());
            for (k, (t, d)) in fd.transversals.iter().zip(&fd.transversal_duals).enumerate() {
                let members: Vec<String> = t.iter().map(|c| format!("C{c}")).collect();
                r.both(&format!("transversal{k}"), format!("{} -> D{d}", members.join(" ")));
            }
            r.both("duals", fd.dual.len());
            for (k, c) in fd.components.iter().enumerate() {
                r.structure(format!("C{k}"), c.clone());
            }
            for (k, d) in fd.dual.iter().enumerate() {
                r.structure(format!("D{k}"), d.clone());
            }
            if let Some(dir) = out_dir {
                write_duality(&dir, &fd)?;
            }
            Ok(r)
        }
        Command::CheckDuality { forbidden, dual, oracle } => {
            let fset = load_all(&forbidden)?;
            let dset = load_all(&dual)?;
            let mut r = Report::default();
            let fcores: Vec<Structure> = maximal_cores(&fset.iter().map(core_of).collect::<Vec<_>>())?;
            // minimal forbidden elements: drop those above another one
            let mut minimal: Vec<Structure> = Vec::new();
            for (k, f) in fcores.iter().enumerate() {
                if !fcores.iter().enumerate().any(|(j, g)| j != k && hom_exists(g, f).unwrap_or(false)) {
                    minimal.push(f.clone());
                }
            }
            let exact = if minimal.iter().all(|f| classify(f).forest && f.edge_count() > 0) {
                let expected = if minimal.len() == 1 && classify(&minimal[0]).tree && dset.len() == 1 {
                    verify_duality_pair(&minimal[0], &dset[0])?
                } else {
                    let fd = dual_set(&minimal)?;
                    same_sets(&fd.dual, &maximal_cores(&dset)?)?
                };
                r.both("method", "transversal construction");
                expected
            } else {
                r.both("method", "shape: the forbidden side must be forests with edges");
                false
            };
            r.both("duality", if exact { "yes" } else { "no" });
            let mut ok = exact;
            if let Some(n) = oracle {
                let u = universe(fset[0].sig(), n)?;
                let cx = if fset.len() == 1 && dset.len() == 1 {
                    (!brute_duality_check_in(&fset[0], &dset[0], &u)).then(|| "counterexample".to_string())
                } else {
                    finite_duality_counterexample(&fset, &dset, &u).map(|_| "counterexample".to_string())
                };
                r.both("oracle", format!("n={n} {}", if cx.is_none() { "pass" } else { "fail" }));
                ok &= cx.is_none();
            }
            r.status = if ok { 0 } else { 1 };
            Ok(r)
        }
        Command::Mac { q, oracle } => {
            let q = load_all(&q)?;
            let v = mac_decide(&q)?;
            let mut r = Report::verdict(v.verdict == Mac::Yes);
            r.both("mac", v.verdict.as_str());
            for reason in &v.reasons {
                r.both("reason", reason);
            }
            if let Some((up, down)) = &v.split {
                r.both("split-forests", up.len());
                r.both("split-duals", down.len());
                for (k, s) in up.iter().enumerate() {
                    r.structure(format!("forest{k}"), s.clone());
                }
                for (k, s) in down.iter().enumerate() {
                    r.structure(format!("dual{k}"), s.clone());
                }
            }
            if let Some(n) = oracle {
                let u = universe(q[0].sig(), n)?;
                let pass = maximality_counterexample(&q, &u).is_none();
                r.both("oracle", format!("n={n} {}", if pass { "pass" } else { "fail" }));
            }
            Ok(r)
        }
        Command::Gcsp { forbidden, duals: _, mut files } => {
            let g = load(&files.pop().expect("at least two files"))?;
            let set = load_all(&files)?;
            let mut r = Report::default();
            let accepted = if forbidden {
                let a = gcsp_via_forbidden(&g, &set)?;
                if let Some((k, m)) = &a.witness {
                    r.both("obstruction", format!("{} via {}", files[*k].display(), map_text(&set[*k], &g, m)));
                }
                a.accepted
            } else {
                gcsp_direct(&g, &set)?
            };
            r.both("gcsp", if accepted { "yes" } else { "no" });
            r.status = if accepted { 0 } else { 1 };
            Ok(r)
        }
        Command::Bounds { ty, depth } => {
            let b = tree_bounds(&parse_type(&ty)?, depth);
            let t = match (&b.t_log2, b.t()) {
                (Some(e), Some(t)) if e.bits() <= 64 && *e <= 64u32.into() => t.to_string(),
                (Some(e), _) => format!("2^{e}"),
                (None, _) => "unrepresentable".into(),
            };
            let m = b.m.as_ref().map_or("unrepresentable".into(), |m| m.to_string());
            let mut r = Report::verdict(true);
            r.line(format!("t={t} m={m}"));
            r.field("d", depth).field("t", t).field("m", m);
            Ok(r)
        }
        Command::Enumerate { ty, n, iso } => {
            let sig = parse_type(&ty)?;
            let all = enumerate_structures(&sig, n, iso, ceiling()?)?;
            let mut r = Report::verdict(true);
            r.field("count", all.len());
            for (k, s) in all.into_iter().enumerate() {
                r.structure(format!("s{k}"), s);
            }
            Ok(r)
        }
        Command::Encode3Sat { file, solve } => {
            let text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
            let phi = parse_dimacs(&text)?;
            let (g, h) = encode_3sat(&phi)?;
            let mut r = Report::verdict(true);
            if solve {
                let sat = hom_exists(&g, &h)?;
                r.both("satisfiable", if sat { "yes" } else { "no" });
                r.status = if sat { 0 } else { 1 };
            }
            r.structure("instance", g).structure("template", h);
            Ok(r)
        }
        Command::Fixture { kind, params, ty } => {
            let mut r = Report::verdict(true);
            r.structure(kind.clone(), fixture(&kind, &params, &ty)?);
            Ok(r)
        }
        Command::Rhs { duals, edges } => {
            let dset = load_all(&duals)?;
            let d = rhs_duality_decide_bounded(&dset, edges)?;
            let mut r = Report::verdict(d.forbidden.is_some());
            r.both("edge-bound", d.edge_bound);
            r.both("finite-duality", if d.forbidden.is_some() { "yes" } else { "not within the bound" });
            for (k, f) in d.forbidden.into_iter().flatten().enumerate() {
                r.structure(format!("F{k}"), f);
            }
            Ok(r)
        }
        Command::CuttingPoint { t, n } => {
            let t = load(&t)?;
            let u = universe(t.sig(), n)?;
            let rep = cutting_point_check_in(&t, &u)?;
            let mut r = Report::verdict(rep.passed());
            r.both("checked", rep.checked);
            r.both("product-interval", if rep.product_violation.is_none() { "pass" } else { "fail" });
            r.both("sum-interval", if rep.sum_violation.is_none() { "pass" } else { "fail" });
            if let Some(x) = rep.product_violation {
                r.structure("product-violation", x);
            }
            if let Some(x) = rep.sum_violation {
                r.structure("sum-violation", x);
            }
            Ok(r)
        }
        Command::Lattice { command } => lattice(command),
    }
}

fn element(l: &FiniteLattice, name: &str) -> Result<usize> {
    l.index_of(name).ok_or_else(|| Error::Usage(format!("unknown element `{name}`")))
}

fn lattice(cmd: LatticeCommand) -> Result<Report> {
    let names = |l: &FiniteLattice, xs: &[usize]| xs.iter().map(|&x| l.name(x)).collect::<Vec<_>>().join(" ");
    match cmd {
        LatticeCommand::Check { file } => {
            let l = load_lattice(&file)?;
            let mut r = Report::verdict(true);
            r.both("elements", l.len());
            match distributivity_witness(&l) {
                None => r.both("distributive", "yes"),
                Some((x, y, z)) => r.both("distributive", format!("no ({} {} {})", l.name(x), l.name(y), l.name(z))),
            };
            let h = heyting_table(&l).filter(|h| h.satisfies_axiom(&l));
            r.both("heyting", if h.is_some() { "yes" } else { "no" });
            Ok(r)
        }
        LatticeCommand::Heyting { file } => {
            let l = load_lattice(&file)?;
            let h = heyting_table(&l);
            let mut r = Report::verdict(h.is_some());
            match h {
                None => {
                    r.both("heyting", "no");
                }
                Some(h) => {
                    for p in 0..l.len() {
                        for q in 0..l.len() {
                            r.both(&format!("{}=>{}", l.name(p), l.name(q)), l.name(h.implies(p, q)));
                        }
                    }
                }
            }
            Ok(r)
        }
        LatticeCommand::Connected { file } => {
            let l = load_lattice(&file)?;
            let mut r = Report::verdict(true);
            r.both("connected", names(&l, &connected_elements(&l)));
            for x in 0..l.len() {
                let d = connected_decomposition(&l, x).map_or("none".to_string(), |d| names(&l, &d));
                r.both(&format!("decomposition {}", l.name(x)), d);
            }
            Ok(r)
        }
        LatticeCommand::Pairs { file } => {
            let l = load_lattice(&file)?;
            let mut r = Report::verdict(true);
            for (f, d) in lattice_duality_pairs(&l) {
                r.both("pair", format!("{} {}", l.name(f), l.name(d)));
            }
            Ok(r)
        }
        LatticeCommand::Gaps { file } => {
            let l = load_lattice(&file)?;
            let gaps = lattice_gaps(&l);
            let matches = gaps == gaps_from_duality_pairs(&l);
            let mut r = Report::verdict(matches);
            for (a, b) in &gaps {
                r.both("gap", format!("{} {}", l.name(*a), l.name(*b)));
            }
            r.both("matches-duality-pairs", if matches { "yes" } else { "no" });
            Ok(r)
        }
        LatticeCommand::Transversal { file, elements } => {
            let l = load_lattice(&file)?;
            let fset = elements.iter().map(|e| element(&l, e)).collect::<Result<Vec<_>>>()?;
            let decomps = fset
                .iter()
                .map(|&f| {
                    connected_decomposition(&l, f).ok_or_else(|| {
                        Error::Usage(format!("{} has no decomposition into connected elements", l.name(f)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let ld = lattice_transversal_dual(&l, &fset, &decomps)?;
            let mut r = Report::verdict(ld.verified);
            for t in &ld.transversals {
                r.both("transversal", names(&l, t));
            }
            r.both("dual", names(&l, &ld.dual));
            r.both("verified", if ld.verified { "yes" } else { "no" });
            Ok(r)
        }
        LatticeCommand::Fixture { kind, param } => {
            let need = || param.ok_or_else(|| Error::Usage(format!("`{kind}` needs a parameter")));
            let l = match kind.as_str() {
                "chain" => chain(need()? as usize),
                "subsets" => subset_lattice(need()? as usize),
                "divisors" => divisor_lattice(need()?),
                "m3" => m3(),
                "n5" => n5(),
                other => return Err(Error::Usage(format!("unknown lattice fixture `{other}`"))),
            };
            Ok(Report { raw: Some(serialize_lattice(&l)), ..Report::verdict(true) })
        }
    }
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ =
                    writeln!(err, "error: usage: {}", text.lines().next().unwrap_or("").trim_start_matches("error: "));
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            report.status
        }
        Err(e) => {
            match &e {
                Error::Core(homdual_core::Error::Guard { guard, detail }) => {
                    let _ = writeln!(err, "guard: {guard}: {detail}");
                }
                _ => {
                    let _ = writeln!(err, "error: {}: {e}", e.code());
                }
            }
            e.exit_code()
        }
    }
}
