//! One function per subcommand. Each returns the text to print and the exit code.

use std::fmt::Write as _;

use changemaker_core::cmlattice::{
    self, changemaker_lattice, slope_window, Bounds, StableCoefficients,
};
use changemaker_core::goeritz::{
    goeritz_matrix, verify_alternating_surgery, white_graph_from_pd, Coloring, Verdict,
    VerificationReport,
};
use changemaker_core::graphlat::{
    default_norm_bound, find_obtuse_superbase, laplacian_lattice, superbase_graph,
    SearchCertificate, SearchOptions,
};
use changemaker_core::recovery::{
    recover_stable, t_profile, torsion_coefficients, v_sequence, RecoveryOutcome,
};
use changemaker_core::{GramMatrix, Rational};
use serde::Serialize;

use crate::error::{exit, CliError};
use crate::formats::{
    read_json, AlexanderFile, CertificateFile, GraphFile, LatticeFile, PdFile, WhiteDiagramFile,
};
use crate::{Cli, ColoringArg, Command, Format};

/// Rendered result of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code: exit::SUCCESS,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Bounds { alexander, stable } => match (alexander, stable) {
            (Some(path), _) => bounds_from_alexander(cli, &read_json::<AlexanderFile>(path)?),
            (None, Some(list)) => bounds_from_stable(cli, parse_stable(list)?, None),
            (None, None) => Err(CliError::Parse("pass --alexander or --stable".into())),
        },
        Command::Lattice {
            slope,
            stable,
            rank,
        } => lattice(cli, parse_slope(slope)?, parse_stable(stable)?, *rank),
        Command::Superbase { lattice, graph } => match (lattice, graph) {
            (Some(path), _) => superbase(cli, read_json::<LatticeFile>(path)?.to_gram()?, None),
            (None, Some(path)) => {
                let g = read_json::<GraphFile>(path)?.to_graph()?;
                let lat = laplacian_lattice(&g, g.vertex_count().saturating_sub(1))?;
                superbase(cli, lat.gram, Some(g.max_degree() as i64))
            }
            (None, None) => Err(CliError::Parse("pass a lattice file or --graph".into())),
        },
        Command::Verify {
            pd,
            alexander,
            slope,
        } => verify(
            cli,
            &read_json::<PdFile>(pd)?,
            &read_json::<AlexanderFile>(alexander)?,
            parse_slope(slope)?,
        ),
        Command::Recover { alexander } => recover(cli, &read_json::<AlexanderFile>(alexander)?),
        Command::Goeritz { pd, coloring } => goeritz(cli, &read_json::<PdFile>(pd)?, *coloring),
    }
}

pub fn parse_stable(list: &str) -> Result<StableCoefficients, CliError> {
    let entries = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| CliError::Parse(format!("bad stable coefficient `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    StableCoefficients::new(entries)
        .map_err(|e| CliError::Parse(format!("stable coefficients: {e}")))
}

fn parse_slope(s: &str) -> Result<Rational, CliError> {
    s.parse::<Rational>()
        .map_err(|e| CliError::Parse(format!("slope: {e}")))
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct BoundsJson {
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    torsion: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stable: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus_cap: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstructions: Option<Vec<ObstructionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct ObstructionJson {
    slope: i64,
    reason: String,
}

impl BoundsJson {
    fn empty(outcome: &'static str) -> Self {
        BoundsJson {
            outcome,
            torsion: None,
            stable: None,
            genus: None,
            n: None,
            window: None,
            genus_cap: None,
            obstructions: None,
            witness: None,
        }
    }
}

fn bounds_from_alexander(cli: &Cli, file: &AlexanderFile) -> Result<Output, CliError> {
    let delta = file.to_polynomial()?;
    let mut torsion = torsion_coefficients(&delta)?;
    while torsion.last() == Some(&0) && torsion.len() > 1 {
        torsion.pop();
    }
    match recover_stable(&v_sequence(&delta)?)? {
        RecoveryOutcome::Found { stable, .. } => bounds_from_stable(cli, stable, Some(torsion)),
        RecoveryOutcome::NoSolution(w) => {
            let stdout = match cli.format {
                Format::Text => format!("no changemaker vector ({w})\n"),
                Format::Json => {
                    let mut j = BoundsJson::empty("NO_SOLUTION");
                    j.torsion = Some(torsion);
                    j.witness = Some(w.to_string());
                    to_json(&j)
                }
            };
            Ok(Output {
                stdout,
                stderr: String::new(),
                code: exit::NONEXISTENCE,
            })
        }
    }
}

fn bounds_from_stable(
    cli: &Cli,
    stable: StableCoefficients,
    torsion: Option<Vec<i64>>,
) -> Result<Output, CliError> {
    let report = match cmlattice::bounds(&stable)? {
        Bounds::TrivialKnot => {
            return Ok(Output::ok(match cli.format {
                Format::Text => "stable=() trivial knot: no slope window\n".into(),
                Format::Json => {
                    let mut j = BoundsJson::empty("TRIVIAL_KNOT");
                    j.torsion = torsion;
                    j.stable = Some(Vec::new());
                    to_json(&j)
                }
            }));
        }
        Bounds::Report(r) => r,
    };
    Ok(Output::ok(match cli.format {
        Format::Text => {
            let mut s = String::new();
            if let Some(t) = &torsion {
                writeln!(s, "torsion={}", tuple(t)).unwrap();
            }
            writeln!(
                s,
                "stable={} g={} N={} window=[{},{}] cap={}",
                report.stable,
                report.genus,
                report.n,
                report.window_lo,
                report.window_hi,
                report.genus_cap
            )
            .unwrap();
            for o in &report.obstructions {
                writeln!(s, "obstructed at {}: {}", o.slope, o.reason).unwrap();
            }
            s
        }
        Format::Json => to_json(&BoundsJson {
            outcome: "BOUNDS",
            torsion,
            stable: Some(report.stable.entries().to_vec()),
            genus: Some(report.genus),
            n: Some(report.n),
            window: Some([report.window_lo, report.window_hi]),
            genus_cap: Some(report.genus_cap),
            obstructions: Some(
                report
                    .obstructions
                    .iter()
                    .map(|o| ObstructionJson {
                        slope: o.slope,
                        reason: o.reason.clone(),
                    })
                    .collect(),
            ),
            witness: None,
        }),
    }))
}

fn lattice(
    cli: &Cli,
    slope: Rational,
    stable: StableCoefficients,
    rank: Option<usize>,
) -> Result<Output, CliError> {
    if !stable.is_empty() && !cli.force {
        let (lo, hi) = slope_window(&stable)?;
        if slope.cmp_int(lo).is_lt() || slope.cmp_int(hi).is_gt() {
            return Ok(Output {
                stdout: String::new(),
                stderr: format!("slope {slope} lies outside the window [{lo},{hi}]; pass --force to build it anyway\n"),
                code: exit::NONEXISTENCE,
            });
        }
    }
    let lat = changemaker_lattice(slope, &stable, rank)?;
    Ok(Output::ok(to_json(&LatticeFile::from(&lat))))
}

fn superbase(cli: &Cli, g: GramMatrix, min_bound: Option<i64>) -> Result<Output, CliError> {
    let bound = cli
        .bound
        .unwrap_or_else(|| default_norm_bound(&g).max(min_bound.unwrap_or(0)));
    let opts = SearchOptions {
        norm_bound: Some(bound),
        rank_cap: cli.rank_cap,
    };
    let cert = find_obtuse_superbase(&g, &opts)?;
    let graph = match &cert {
        SearchCertificate::Found(b) => Some(superbase_graph(&g, b)?),
        SearchCertificate::NotFound { .. } => None,
    };
    let file = CertificateFile::new(&cert, bound, graph.as_ref());
    let code = if graph.is_some() {
        exit::SUCCESS
    } else {
        exit::NOT_FOUND
    };
    let stdout = match cli.format {
        Format::Json => to_json(&file),
        Format::Text => {
            let mut s = String::new();
            match (&file.superbase, &graph) {
                (Some(vectors), Some(h)) => {
                    writeln!(
                        s,
                        "FOUND norm_bound={bound} vertices={} edges={}",
                        h.vertex_count(),
                        h.edges().len()
                    )
                    .unwrap();
                    for (i, v) in vectors.iter().enumerate() {
                        writeln!(s, "v{i}={}", tuple(v)).unwrap();
                    }
                    let edges: Vec<String> =
                        h.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
                    writeln!(s, "edges: {}", edges.join(" ")).unwrap();
                }
                _ => writeln!(
                    s,
                    "NOT_FOUND norm_bound={bound} examined={}",
                    file.vectors_examined.unwrap_or_default()
                )
                .unwrap(),
            }
            s
        }
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code,
    })
}

#[derive(Serialize)]
struct VerifyJson {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    stage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    coloring: Option<String>,
    mirrored: bool,
    white_rank: usize,
    white_determinant: i64,
    stable: Option<Vec<i64>>,
    window: Option<[i64; 2]>,
    changemaker_rank: Option<usize>,
    superbase: Option<String>,
}

fn verify(
    cli: &Cli,
    pd: &PdFile,
    alexander: &AlexanderFile,
    slope: Rational,
) -> Result<Output, CliError> {
    let report = verify_alternating_surgery(&pd.to_pd()?, &alexander.to_polynomial()?, slope)?;
    let code = if report.passed() {
        exit::SUCCESS
    } else {
        exit::FAIL
    };
    let stdout = match cli.format {
        Format::Json => to_json(&verify_json(&report)),
        Format::Text => verify_text(&report, slope),
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code,
    })
}

fn superbase_summary(report: &VerificationReport) -> Option<String> {
    report.superbase.as_ref().map(|c| match c {
        SearchCertificate::Found(_) => "FOUND".to_string(),
        SearchCertificate::NotFound { norm_bound, .. } => {
            format!("NOT_FOUND within norm {norm_bound}")
        }
    })
}

fn verify_json(r: &VerificationReport) -> VerifyJson {
    let (verdict, stage, reason) = match &r.verdict {
        Verdict::Pass => ("PASS", None, None),
        Verdict::Fail { stage, reason } => ("FAIL", Some(stage.to_string()), Some(reason.clone())),
    };
    VerifyJson {
        verdict,
        stage,
        reason,
        coloring: r.coloring.map(|c| c.to_string()),
        mirrored: r.mirrored,
        white_rank: r.white_rank,
        white_determinant: r.white_determinant,
        stable: r.stable.as_ref().map(|s| s.entries().to_vec()),
        window: r.window.map(|(a, b)| [a, b]),
        changemaker_rank: r.changemaker_rank,
        superbase: superbase_summary(r),
    }
}

fn verify_text(r: &VerificationReport, slope: Rational) -> String {
    let mut s = String::new();
    let coloring = r.coloring.map_or("-".to_string(), |c| c.to_string());
    writeln!(
        s,
        "coloring={coloring} mirrored={} white: rank={} det={}",
        r.mirrored, r.white_rank, r.white_determinant
    )
    .unwrap();
    if let Some(st) = &r.stable {
        match r.window {
            Some((lo, hi)) => writeln!(s, "stable={st} window=[{lo},{hi}] slope={slope}").unwrap(),
            None => writeln!(s, "stable={st} window=none slope={slope}").unwrap(),
        }
    }
    if let Some(k) = r.changemaker_rank {
        writeln!(s, "changemaker rank={k}").unwrap();
    }
    match &r.verdict {
        Verdict::Pass => {
            writeln!(s, "PASS").unwrap();
            if let Some(sb) = superbase_summary(r) {
                writeln!(s, "superbase: {sb}").unwrap();
            }
        }
        Verdict::Fail { stage, reason } => writeln!(s, "FAIL at {stage}: {reason}").unwrap(),
    }
    s
}

#[derive(Serialize)]
struct RecoverJson {
    torsion: Vec<i64>,
    v: Vec<i64>,
    g_tilde: i64,
    t_profile: Vec<i64>,
    mu: Option<i64>,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stable: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn recover(cli: &Cli, file: &AlexanderFile) -> Result<Output, CliError> {
    let delta = file.to_polynomial()?;
    let torsion = torsion_coefficients(&delta)?;
    let v = v_sequence(&delta)?;
    let profile = t_profile(&v);
    let outcome = recover_stable(&v)?;
    let mut j = RecoverJson {
        torsion,
        v: v.values().to_vec(),
        g_tilde: v.g_tilde(),
        t_profile: profile.values().to_vec(),
        mu: profile.mu,
        outcome: "FOUND",
        rho: None,
        stable: None,
        witness: None,
    };
    let code = match &outcome {
        RecoveryOutcome::Found { rho, stable } => {
            j.rho = Some(rho.clone());
            j.stable = Some(stable.entries().to_vec());
            exit::SUCCESS
        }
        RecoveryOutcome::NoSolution(w) => {
            j.outcome = "NO_SOLUTION";
            j.witness = Some(w.to_string());
            exit::NONEXISTENCE
        }
    };
    let stdout = match cli.format {
        Format::Json => to_json(&j),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "torsion={}", tuple(&j.torsion)).unwrap();
            writeln!(s, "V={} g\u{303}={}", tuple(&j.v), j.g_tilde).unwrap();
            let mu = j.mu.map_or("-".to_string(), |m| m.to_string());
            writeln!(s, "T={} mu={mu}", tuple(&j.t_profile)).unwrap();
            match &outcome {
                RecoveryOutcome::Found { rho, stable } => {
                    writeln!(s, "rho={} stable={stable}", tuple(rho)).unwrap()
                }
                RecoveryOutcome::NoSolution(w) => {
                    writeln!(s, "no changemaker vector ({w})").unwrap()
                }
            }
            s
        }
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        code,
    })
}

#[derive(Serialize)]
struct GoeritzJson {
    coloring: String,
    white: WhiteDiagramFile,
    reduced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    nugatory: Option<String>,
    goeritz: Vec<Vec<i64>>,
    determinant: i64,
}

fn goeritz(cli: &Cli, pd: &PdFile, coloring: ColoringArg) -> Result<Output, CliError> {
    let coloring = match coloring {
        ColoringArg::A => Coloring::A,
        ColoringArg::B => Coloring::B,
    };
    let w = white_graph_from_pd(&pd.to_pd()?, coloring)?;
    let m = goeritz_matrix(&w, w.vertex_count() - 1)?;
    let nugatory = w.nugatory();
    let j = GoeritzJson {
        coloring: coloring.to_string(),
        white: WhiteDiagramFile::from(&w),
        reduced: nugatory.is_none(),
        nugatory,
        determinant: m.determinant()?,
        goeritz: m.into_rows(),
    };
    Ok(Output::ok(match cli.format {
        Format::Json => to_json(&j),
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "coloring={} vertices={} reduced={}",
                j.coloring, j.white.vertices, j.reduced
            )
            .unwrap();
            let edges: Vec<String> = j
                .white
                .edges
                .iter()
                .zip(&j.white.mu)
                .map(|([u, v], m)| format!("{u}-{v}:{m:+}"))
                .collect();
            writeln!(s, "edges: {}", edges.join(" ")).unwrap();
            if let Some(why) = &j.nugatory {
                writeln!(s, "nugatory: {why}").unwrap();
            }
            writeln!(s, "goeritz (det {}):", j.determinant).unwrap();
            for row in &j.goeritz {
                writeln!(s, "  {}", tuple(row)).unwrap();
            }
            s
        }
    }))
}
