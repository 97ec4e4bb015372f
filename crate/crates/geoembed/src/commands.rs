use std::path::Path;

use geoembed_core::diagram::{
    bipyramid_diagram, boundary_subgroups, cube_diagram, octahedron_diagram, tetrahedron_diagram,
    tetrahedron_planar_diagram, wirtinger_presentation, PolyhedronKind, SpatialGraphDiagram,
};
use geoembed_core::fuchsian::{
    low_index_actions, normal_core, schreier_generators, stabilizer_homs_mod2, subgroup_signature, CoreReport,
    FuchsianSignature,
};
use geoembed_core::geometry::{
    realize_polyhedron, signature_check, tetrahedron_gram, vertex_hyperideal_check, MinkowskiRealization,
    RealizeOptions,
};
use geoembed_core::homs::{epi_search_with, EpiOptions, GroupHom};
use geoembed_core::pipeline::{
    corollary2_pipeline, embed, hurwitz_check, theorem3_pipeline, EmbedOptions, EmbeddingReport, HurwitzCheck,
};
use geoembed_core::{Error, PermGroup, Permutation};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cli::{Cli, CliError, Command, PolyhedronArg, SolverArgs};
use crate::config::RunConfig;
use crate::io::{
    self, parent_dir, read_json, resolve_target, ActionFile, HomFile, PresentationFile, StabilizerHomFile,
};

/// Result of a command: the JSON artifact, a one-paragraph summary, and
/// whether the command's check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub artifact: String,
    pub summary: String,
    pub success: bool,
}

impl Output {
    fn ok<T: Serialize>(value: &T, summary: String) -> Self {
        Output { artifact: io::to_json(value), summary, success: true }
    }
}

fn parse_sig(s: &str) -> Result<FuchsianSignature, CliError> {
    s.parse().map_err(|e: Error| CliError::Malformed(format!("signature {s:?}: {e}")))
}

fn parse_labels(s: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    let mut column = 1;
    for part in s.split(',') {
        let v = part.trim().parse::<u32>().map_err(|_| {
            CliError::Malformed(format!("labels {s:?}: expected a number at column {column}"))
        })?;
        out.push(v);
        column += part.len() + 1;
    }
    Ok(out)
}

fn target(reference: &str) -> Result<PermGroup, CliError> {
    Ok(resolve_target(reference, Path::new("."))?)
}

fn realize_options(s: &SolverArgs) -> RealizeOptions {
    RealizeOptions { tol: s.tol, seed: s.seed, restarts: s.restarts, ..RealizeOptions::default() }
}

fn build(polyhedron: PolyhedronArg, labels: &[u32]) -> Result<SpatialGraphDiagram, CliError> {
    let want = |n: usize| {
        if labels.len() == n {
            Ok(())
        } else {
            Err(CliError::Malformed(format!("{polyhedron:?} needs {n} labels, got {}", labels.len())))
        }
    };
    let d = match polyhedron {
        PolyhedronArg::Tetrahedron => want(3).and_then(|_| Ok(tetrahedron_diagram(labels[0], labels[1], labels[2])?)),
        PolyhedronArg::Planar => want(3).and_then(|_| Ok(tetrahedron_planar_diagram(labels[0], labels[1], labels[2])?)),
        PolyhedronArg::Cube => want(3).and_then(|_| Ok(cube_diagram(labels[0], labels[1], labels[2])?)),
        PolyhedronArg::Octahedron => {
            want(4).and_then(|_| Ok(octahedron_diagram(labels[0], labels[1], labels[2], labels[3])?))
        }
        PolyhedronArg::Bipyramid => Ok(bipyramid_diagram(labels)?),
    }?;
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub signature: FuchsianSignature,
    pub relators_trivial: bool,
    pub failing_relator: Option<String>,
    pub surjective: bool,
    pub smooth: bool,
    pub image_order: u128,
    pub target_order: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedSummary {
    pub polyhedron: PolyhedronKind,
    pub boundary_genera: Vec<u64>,
    pub euler_consistent: bool,
    pub hurwitz: HurwitzCheck,
}

impl From<&EmbeddingReport> for EmbedSummary {
    fn from(r: &EmbeddingReport) -> Self {
        EmbedSummary {
            polyhedron: r.polyhedron,
            boundary_genera: r.closed_manifold.boundary_genera.clone(),
            euler_consistent: r.euler.consistent,
            hurwitz: hurwitz_check(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub signature: FuchsianSignature,
    pub target: PermGroup,
    pub target_order: u128,
    /// Genus of the surface of every smooth quotient.
    pub quotient_genus: Option<u64>,
    pub homs: Vec<HomFile>,
    pub embeddings: Option<Vec<EmbedSummary>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowIndexEntry {
    pub action: ActionFile,
    pub subgroup_signature: FuchsianSignature,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowIndexReport {
    pub signature: FuchsianSignature,
    pub max_degree: usize,
    pub actions: Vec<LowIndexEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub signature: FuchsianSignature,
    pub degree: usize,
    pub subgroup_signature: FuchsianSignature,
    pub torsion_free: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub labels: [u32; 3],
    pub matrix: Vec<Vec<f64>>,
    pub signature: (usize, usize, usize),
    /// Principal 3×3 minors at the four vertices.
    pub vertex_minors: Vec<f64>,
    pub hyperideal: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizeReport {
    pub polyhedron: PolyhedronKind,
    pub labels: Vec<u32>,
    pub realization: MinkowskiRealization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEntry {
    pub vertex: usize,
    pub signature: FuchsianSignature,
    pub meridians: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerReport {
    pub presentation: PresentationFile,
    pub labels: Vec<u32>,
    pub boundary: Vec<BoundaryEntry>,
}

fn load_hom(path: &Path, target_override: Option<&str>) -> Result<(HomFile, GroupHom), CliError> {
    let file: HomFile = read_json(path)?;
    let target = target_override.map(target).transpose()?;
    let hom = file.to_hom(&parent_dir(path), target)?;
    Ok((file, hom))
}

fn embed_options(no_geometry: bool, solver: &SolverArgs) -> EmbedOptions {
    if no_geometry {
        EmbedOptions::without_geometry()
    } else {
        EmbedOptions { realize: Some(realize_options(solver)) }
    }
}

fn thread_pool(config: &RunConfig) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Malformed(format!("thread pool: {e}")))
}

fn log(config: &RunConfig, level: u8, msg: impl FnOnce() -> String) {
    if config.verbosity >= level {
        eprintln!("{}", msg());
    }
}

pub fn run(cli: &Cli, config: &RunConfig) -> Result<Output, CliError> {
    match &cli.command {
        Command::VerifyHom { hom, target } => {
            let (file, h) = load_hom(hom, target.as_deref())?;
            let failing = h.failing_relator().map(|i| h.domain().display_word(&h.domain().relators()[i]));
            let report = VerifyReport {
                signature: file.signature.clone(),
                relators_trivial: failing.is_none(),
                failing_relator: failing.clone(),
                surjective: h.is_surjective(),
                smooth: h.is_smooth(&file.signature),
                image_order: h.image().order(),
                target_order: h.codomain().order(),
            };
            let summary = match &failing {
                None => format!(
                    "homomorphism on {} verified; surjective: {}, smooth: {}",
                    report.signature, report.surjective, report.smooth
                ),
                Some(r) => format!("relator {r} is not mapped to the identity"),
            };
            Ok(Output { artifact: io::to_json(&report), summary, success: failing.is_none() })
        }
        Command::Census { sig, target: t, outer, embed: run_embed } => {
            let sig = parse_sig(sig)?;
            sig.ensure_hyperbolic()?;
            let group = target(t)?;
            log(config, 1, || format!("searching epimorphisms {sig} -> group of order {}", group.order()));
            let homs = epi_search_with(&sig, &group, EpiOptions { outer: *outer })?;
            let embeddings = if *run_embed {
                let pool = thread_pool(config)?;
                let results: Vec<Result<EmbedSummary, Error>> = pool.install(|| {
                    homs.par_iter()
                        .map(|h| embed(h, &EmbedOptions::without_geometry()).map(|r| EmbedSummary::from(&r)))
                        .collect()
                });
                Some(results.into_iter().collect::<Result<Vec<_>, _>>()?)
            } else {
                None
            };
            let report = CensusReport {
                quotient_genus: sig.quotient_genus(group.order()).ok(),
                signature: sig.clone(),
                target_order: group.order(),
                homs: homs.iter().map(|h| HomFile::from_hom(h, &sig)).collect(),
                target: group,
                embeddings,
            };
            let summary = format!(
                "{} smooth epimorphism(s) {} -> group of order {}",
                report.homs.len(),
                report.signature,
                report.target_order
            );
            Ok(Output::ok(&report, summary))
        }
        Command::LowIndex { sig, max_degree } => {
            let sig = parse_sig(sig)?;
            let actions = low_index_actions(&sig, *max_degree);
            let entries = actions
                .iter()
                .map(|a| Ok(LowIndexEntry { action: ActionFile::from_action(a), subgroup_signature: subgroup_signature(a)? }))
                .collect::<Result<Vec<_>, Error>>()?;
            let report = LowIndexReport { signature: sig, max_degree: *max_degree, actions: entries };
            let summary =
                format!("{} transitive action(s) of {} of degree ≤ {}", report.actions.len(), report.signature, max_degree);
            Ok(Output::ok(&report, summary))
        }
        Command::SubgroupSignature { action } => {
            let a = read_json::<ActionFile>(action)?.to_action()?;
            let s = subgroup_signature(&a)?;
            let report = SubgroupReport {
                signature: a.signature().clone(),
                degree: a.degree(),
                torsion_free: s.periods().is_empty(),
                subgroup_signature: s,
            };
            let summary = format!("{}", report.subgroup_signature);
            Ok(Output::ok(&report, summary))
        }
        Command::Embed { sig, hom, target: t, no_geometry, solver } => {
            if let Some(s) = sig {
                parse_sig(s)?.ensure_hyperbolic()?;
            }
            let (file, h) = load_hom(hom, t.as_deref())?;
            if let Some(s) = sig {
                if parse_sig(s)? != file.signature {
                    return Err(CliError::Malformed(format!(
                        "--sig {s} differs from the homomorphism's signature {}",
                        file.signature
                    )));
                }
            }
            file.signature.ensure_hyperbolic()?;
            let report = embed(&h, &embed_options(*no_geometry, solver))?;
            let summary = embed_summary(&report);
            Ok(Output::ok(&report, summary))
        }
        Command::Core { action } => {
            let a = read_json::<ActionFile>(action)?.to_action()?;
            let report: CoreReport = normal_core(&a)?;
            let summary = format!(
                "core of index {}; point stabilizer image of order {}",
                report.core_index, report.stabilizer_image_order
            );
            Ok(Output::ok(&report, summary))
        }
        Command::Corollary2 { action, no_geometry, solver } => {
            let a = read_json::<ActionFile>(action)?.to_action()?;
            let report = corollary2_pipeline(&a, &embed_options(*no_geometry, solver))?;
            let summary = format!(
                "genus {} surface covered with degree {} by the quasiplatonic genus {} surface (|G| = {}); {}",
                report.base_genus,
                report.covering_degree,
                report.quasiplatonic_genus,
                report.group_order,
                embed_summary(&report.embedding)
            );
            let success = report.euler_consistent;
            Ok(Output { artifact: io::to_json(&report), summary, success })
        }
        Command::Gram { labels } => {
            let l = parse_labels(labels)?;
            if l.len() != 3 || l.iter().any(|&m| m < 2) {
                return Err(CliError::Malformed(format!("--type needs three labels ≥ 2, got {labels:?}")));
            }
            let g = tetrahedron_gram(l[0], l[1], l[2]);
            let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
            let report = GramReport {
                labels: [l[0], l[1], l[2]],
                matrix: (0..4).map(|i| (0..4).map(|j| g.get(i, j)).collect()).collect(),
                signature: signature_check(&g),
                vertex_minors: faces.iter().map(|f| g.minor(f)).collect(),
                hyperideal: faces.iter().map(|f| vertex_hyperideal_check(&g, *f)).collect(),
            };
            let summary = format!("signature {:?}; vertex minors {:?}", report.signature, report.vertex_minors);
            Ok(Output::ok(&report, summary))
        }
        Command::Realize { polyhedron, labels, solver } => {
            let l = parse_labels(labels)?;
            let d = build(*polyhedron, &l)?;
            let real = realize_polyhedron(&d.polyhedron(), &realize_options(solver))?;
            let summary = format!(
                "{} realized: residual {:e}, orthogonality {:e}, signature {:?}",
                d.kind, real.residual, real.orthogonality, real.signature
            );
            Ok(Output::ok(&RealizeReport { polyhedron: d.kind, labels: l, realization: real }, summary))
        }
        Command::Diagram { polyhedron, labels } => {
            let d = build(*polyhedron, &parse_labels(labels)?)?;
            let summary = d.to_string();
            Ok(Output::ok(&d, summary))
        }
        Command::Wirtinger { diagram } => {
            let d: SpatialGraphDiagram = read_json(diagram)?;
            let pres = wirtinger_presentation(&d);
            let p = &pres.presentation;
            let report = WirtingerReport {
                presentation: PresentationFile::from_presentation(p),
                labels: pres.labels.clone(),
                boundary: boundary_subgroups(&d, &pres)
                    .into_iter()
                    .map(|b| BoundaryEntry {
                        vertex: b.vertex,
                        signature: b.signature,
                        meridians: b.meridians.iter().map(|m| p.display_word(m)).collect(),
                    })
                    .collect(),
            };
            let summary = format!("{} generators, {} relators", p.generator_count(), p.relators().len());
            Ok(Output::ok(&report, summary))
        }
        Command::Theorem3 { action, stab, mod2 } => {
            let a = read_json::<ActionFile>(action)?.to_action()?;
            let images: Vec<Permutation> = match (stab, mod2) {
                (Some(path), _) => read_json::<StabilizerHomFile>(path)?.to_images()?,
                (None, Some(k)) => {
                    let basis = stabilizer_homs_mod2(&a);
                    let v = basis.get(*k).ok_or_else(|| {
                        CliError::Malformed(format!("Hom(stabilizer, Z/2) has dimension {}, no vector {k}", basis.len()))
                    })?;
                    let swap = Permutation::from_images(vec![1, 0]).expect("transposition");
                    v.iter().map(|&b| if b == 1 { swap.clone() } else { Permutation::identity(2) }).collect()
                }
                (None, None) => {
                    vec![Permutation::identity(1); schreier_generators(&a).generators.len()]
                }
            };
            let report = theorem3_pipeline(&a, &images)?;
            let summary = format!(
                "G of order {} acts on the genus {} surface; manifold cover of degree {} with boundary genera {:?}",
                report.group_order,
                report.surface_signature.genus(),
                report.induced_degree,
                report.closed_manifold.boundary_genera
            );
            let success = report.euler.consistent;
            Ok(Output { artifact: io::to_json(&report), summary, success })
        }
    }
}

fn embed_summary(r: &EmbeddingReport) -> String {
    let mut genera: Vec<String> = Vec::new();
    for b in &r.boundary_components {
        genera.push(format!("{}×g{}", b.component_count, b.surface_genus));
    }
    let geometry = if r.geometry.is_verified() { "verified" } else { "unverified" };
    format!(
        "{} route; {} boundary component(s) [{}]; Euler check {}; geometry {}",
        r.polyhedron,
        r.component_total(),
        genera.join(", "),
        if r.euler.consistent { "exact" } else { "FAILED" },
        geometry
    )
}

/// Runs the command, writes or prints its output, and returns the exit code.
pub fn execute(cli: &Cli, env_threads: Option<&str>) -> i32 {
    let result = RunConfig::new(cli, env_threads).and_then(|config| {
        log(&config, 2, || format!("{config:?}"));
        let out = run(cli, &config)?;
        if let Some(path) = &config.output {
            io::write_json_text(path, &out.artifact)?;
        }
        if config.json && config.output.is_none() {
            print!("{}", out.artifact);
        } else {
            println!("{}", out.summary);
        }
        Ok(out)
    });
    match result {
        Ok(out) if out.success => crate::cli::EXIT_OK,
        Ok(out) => {
            eprintln!("error: {}", out.summary);
            crate::cli::EXIT_CERTIFICATION
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
