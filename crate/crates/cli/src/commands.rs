use dehnkit::diagrams::{
    build_power_diagram, build_w_diagram, build_xn_diagram, t_annuli, CheckStatus, VanKampenDiagram,
};
use dehnkit::families::{self, presentations_equal, ElementaryOp, FamilyKind, Presentation};
use dehnkit::oracles::{
    dehn_profile, scaling_report, DehnRow, Outcome as SearchOutcome, ScalingRow, Search, Table,
};
use dehnkit::wordproblem::{is_trivial_g, PnSolver, WpError, WpVerdict, ZCertificate};
use dehnkit::words::Word;
use serde::Serialize;
use serde_json::json;

use crate::args::{
    Command, DiagramAction, DiagramKind, Format, GenFamily, PresentationArgs, ReportAction,
    TietzeAction, WordArgs,
};
use crate::config::RunConfig;
use crate::error::{CliError, Outcome};
use crate::input;

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn no_csv(cfg: &RunConfig, what: &str) -> Result<(), CliError> {
    if cfg.format == Some(Format::Csv) {
        Err(CliError::usage(format!(
            "{what} has no CSV form; use json or text"
        )))
    } else {
        Ok(())
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Gen { family, n, k } => gen(*family, *n, *k, cfg),
        Command::Wp { presentation, word } => wp(presentation, word, cfg),
        Command::Area {
            presentation,
            word,
            witness,
        } => area(presentation, word, witness.as_deref(), cfg, false),
        Command::Fill {
            presentation,
            word,
            witness,
        } => area(presentation, word, witness.as_deref(), cfg, true),
        Command::Diagram { action } => diagram(action, cfg),
        Command::Tietze { action } => tietze(action, cfg),
        Command::Report { action } => report(action, cfg),
    }
}

fn gen(family: GenFamily, n: u32, k: Option<u32>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_csv(cfg, "gen")?;
    let fam = |e: families::FamilyError| CliError::usage(e.to_string());
    let word = match family {
        GenFamily::G | GenFamily::P | GenFamily::Q | GenFamily::T => {
            let letter = match family {
                GenFamily::G => "G",
                GenFamily::P => "P",
                GenFamily::Q => "Q",
                _ => "T",
            };
            let p = input::presentation_by_name(letter, n)?;
            return Ok(Outcome::ok(match cfg.format {
                Some(Format::Text) => format!("{p}\n"),
                _ => to_json(&p)?,
            }));
        }
        GenFamily::W => families::w_word(n),
        GenFamily::LowerG => {
            let k = k.ok_or_else(|| CliError::usage("gen g needs <n> <k>"))?;
            if k == 0 {
                return Err(CliError::usage("gen g needs k >= 1"));
            }
            families::g_word(n, k).map_err(fam)?
        }
        GenFamily::V => families::v_word(n).map_err(fam)?,
    };
    Ok(Outcome::ok(match cfg.format {
        Some(Format::Text) => format!("{word}\n"),
        _ => format!("{}\n", serde_json::to_string(&word)?),
    }))
}

/// The verdict, with the replayable certificate behind it for `P(n)`.
fn verdict_for(
    p: &Presentation,
    w: &Word,
    cfg: &RunConfig,
) -> Result<(WpVerdict, Option<ZCertificate>), CliError> {
    p.check_word(w)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let Some(tag) = p.family() else {
        return Err(CliError::usage(
            "wp needs a presentation with a G, P, Q or T family tag",
        ));
    };
    match tag.tag {
        FamilyKind::G => is_trivial_g(tag.n, w, cfg.bit_cap)
            .map(|v| (v, None))
            .map_err(|e| CliError::usage(e.to_string())),
        FamilyKind::P => match PnSolver::new(tag.n, cfg.bit_cap) {
            Ok(s) => {
                let verdict = if s
                    .is_trivial(w)
                    .map_err(|e| CliError::usage(e.to_string()))?
                {
                    WpVerdict::Trivial
                } else {
                    WpVerdict::Nontrivial
                };
                Ok((verdict, Some(s.certificate().clone())))
            }
            Err(WpError::Undecided(e)) => Ok((WpVerdict::UndecidedAtCap(e.reason), None)),
            Err(e) => Err(CliError::usage(e.to_string())),
        },
        FamilyKind::Q | FamilyKind::T => Ok((WpVerdict::Trivial, None)),
    }
}

fn wp(pa: &PresentationArgs, wa: &WordArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_csv(cfg, "wp")?;
    let p = input::presentation(pa)?;
    let w = input::word(wa)?;
    let (verdict, certificate) = verdict_for(&p, &w, cfg)?;
    let text = match cfg.format {
        Some(Format::Json) => {
            to_json(&json!({ "verdict": verdict, "word": w, "certificate": certificate }))?
        }
        _ => format!("{verdict}\n"),
    };
    Ok(match verdict {
        WpVerdict::UndecidedAtCap(_) => Outcome::negative(text),
        _ => Outcome::ok(text),
    })
}

fn area(
    pa: &PresentationArgs,
    wa: &WordArgs,
    witness_path: Option<&std::path::Path>,
    cfg: &RunConfig,
    fill: bool,
) -> Result<Outcome, CliError> {
    no_csv(cfg, if fill { "fill" } else { "area" })?;
    let p = input::presentation(pa)?;
    let w = input::word(wa)?;
    let search = Search::new(&p, cfg.caps)
        .map_err(|e| CliError::usage(e.to_string()))?
        .parallel(cfg.parallel);
    let key = if fill { "fill_length" } else { "area" };
    let (value, witness, reason) = if fill {
        let r = search
            .fill_length(&w)
            .map_err(|e| CliError::usage(e.to_string()))?;
        let reason = r
            .tried
            .last()
            .map(|(cap, why)| format!("length cap {cap}: {why}"));
        (
            r.peak,
            r.witness,
            reason.unwrap_or_else(|| "no length cap tried".into()),
        )
    } else {
        let r = search
            .min_area(&w)
            .map_err(|e| CliError::usage(e.to_string()))?;
        match r.outcome {
            SearchOutcome::Found { cost, witness } => (Some(cost), Some(witness), String::new()),
            SearchOutcome::Exhausted => (None, None, "exhausted within max_word_length".into()),
            SearchOutcome::CapHit(why) => (None, None, why),
        }
    };
    if let (Some(path), Some(seq)) = (witness_path, &witness) {
        write_file(path, &to_json(seq)?)?;
    }
    match value {
        Some(v) => Ok(Outcome::ok(match cfg.format {
            Some(Format::Json) => to_json(&json!({ key: v, "witness": witness }))?,
            _ => format!("{v}\n"),
        })),
        None => Ok(Outcome::negative(match cfg.format {
            Some(Format::Json) => to_json(&json!({ key: null, "reason": reason }))?,
            _ => format!("absent: {reason}\n"),
        })),
    }
}

fn read_diagram(path: &std::path::Path) -> Result<VanKampenDiagram, CliError> {
    input::read_json(path)
}

fn diagram(action: &DiagramAction, cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_csv(cfg, "diagram")?;
    match action {
        DiagramAction::Build { kind, m } => {
            let d = match kind {
                DiagramKind::Power => build_power_diagram(*m, cfg.cell_budget),
                DiagramKind::W => build_w_diagram(*m, cfg.cell_budget),
                DiagramKind::Xn => build_xn_diagram(*m),
            }
            .map_err(|e| CliError::usage(e.to_string()))?;
            Ok(Outcome::ok(match cfg.format {
                Some(Format::Text) => {
                    let area = d.area().map_err(|e| CliError::usage(e.to_string()))?;
                    format!(
                        "area {area}\nboundary {}\ndarts {}\n",
                        d.boundary,
                        d.darts.len()
                    )
                }
                _ => format!("{}\n", serde_json::to_string(&d)?),
            }))
        }
        DiagramAction::Validate { file } => {
            let d = read_diagram(file)?;
            let report = d.validate();
            let text = match cfg.format {
                Some(Format::Text) => {
                    let mut s = String::new();
                    for c in &report.checks {
                        let status = match c.status {
                            CheckStatus::Passed => "PASS",
                            CheckStatus::Failed => "FAIL",
                            CheckStatus::Skipped => "SKIP",
                        };
                        s.push_str(&format!("{status} {}", c.name));
                        if let Some(detail) = &c.detail {
                            s.push_str(&format!(": {detail}"));
                        }
                        s.push('\n');
                    }
                    s.push_str(if report.valid { "valid\n" } else { "invalid\n" });
                    s
                }
                _ => to_json(&report)?,
            };
            Ok(if report.valid {
                Outcome::ok(text)
            } else {
                Outcome::negative(text)
            })
        }
        DiagramAction::Annuli { file } => {
            let d = read_diagram(file)?;
            match t_annuli(&d) {
                Ok(annuli) => Ok(Outcome::ok(match cfg.format {
                    Some(Format::Text) => {
                        let mut s = format!("{} annuli\n", annuli.len());
                        for (i, a) in annuli.iter().enumerate() {
                            s.push_str(&format!(
                                "annulus {i}: cells {:?}; inner {}; outer {}\n",
                                a.cells, a.inner_boundary_word, a.outer_boundary_word
                            ));
                        }
                        s
                    }
                    _ => to_json(&annuli)?,
                })),
                Err(e) => Ok(Outcome::negative(format!("error: {e}\n"))),
            }
        }
    }
}

fn tietze(action: &TietzeAction, cfg: &RunConfig) -> Result<Outcome, CliError> {
    no_csv(cfg, "tietze")?;
    let fam = |e: families::FamilyError| CliError::usage(e.to_string());
    match action {
        TietzeAction::Replay { presentation, ops } => {
            let p = input::presentation(presentation)?;
            let ops: Vec<ElementaryOp> = input::read_json(ops)?;
            let states = families::replay_sequence(&p, &ops).map_err(fam)?;
            let balanced = states.iter().all(|s| s.is_balanced() == p.is_balanced());
            let last = states.last().expect("replay keeps the start");
            Ok(Outcome::ok(match cfg.format {
                Some(Format::Text) => format!(
                    "ops: {}\nbalancedness preserved: {balanced}\nresult: {last}\n",
                    ops.len()
                ),
                _ => to_json(
                    &json!({ "ops": ops.len(), "balancedness_preserved": balanced, "result": last }),
                )?,
            }))
        }
        TietzeAction::Trivialize { n } => {
            let seq = families::standard_trivialization_sequence(*n).map_err(fam)?;
            let q = families::q(*n).map_err(fam)?;
            let t = families::t(*n).map_err(fam)?;
            let states = families::replay_sequence(&q, &seq).map_err(fam)?;
            let balanced = states.iter().all(Presentation::is_balanced);
            let last = states.last().expect("replay keeps the start");
            let matches = presentations_equal(last, &t);
            let ratio = seq.len() as f64 / q.total_length() as f64;
            let text = match cfg.format {
                Some(Format::Json) => to_json(&json!({
                    "n": n,
                    "ops": seq.len(),
                    "q_total_length": q.total_length(),
                    "ops_per_letter": ratio,
                    "balanced_throughout": balanced,
                    "matches_t": matches,
                    "sequence": seq,
                }))?,
                _ => format!(
                    "ops: {}\nQ({n}) total length: {}\nops per letter: {ratio:.4}\nbalanced throughout: {balanced}\nmatches T({n}): {matches}\n",
                    seq.len(),
                    q.total_length()
                ),
            };
            Ok(if matches && balanced {
                Outcome::ok(text)
            } else {
                Outcome::negative(text)
            })
        }
    }
}

fn report(action: &ReportAction, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match action {
        ReportAction::Scaling {
            family,
            m,
            oracle_max_m,
        } => {
            if family != "w_words" {
                return Err(CliError::usage(format!(
                    "unknown scaling family `{family}` (only w_words)"
                )));
            }
            let ms = input::parse_range(m)?;
            let rows = scaling_report(&ms, cfg.caps, *oracle_max_m, cfg.cell_budget, cfg.parallel)
                .map_err(|e| CliError::usage(e.to_string()))?;
            Ok(Outcome::ok(match cfg.format {
                Some(Format::Json) => to_json(&rows)?,
                _ => ScalingRow::to_csv(&rows),
            }))
        }
        ReportAction::DehnProfile {
            presentation,
            max_length,
        } => {
            let p = input::presentation(presentation)?;
            let rows = dehn_profile(&p, *max_length, cfg.caps, cfg.bit_cap, cfg.parallel)
                .map_err(|e| CliError::usage(e.to_string()))?;
            Ok(Outcome::ok(match cfg.format {
                Some(Format::Json) => to_json(&rows)?,
                _ => DehnRow::to_csv(&rows),
            }))
        }
    }
}
