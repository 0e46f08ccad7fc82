use serde_json::{json, Value};

use qess_core::eisert::{eisert_payoffs, MAX_ENTANGLEMENT};
use qess_core::equilibrium::{
    ess_scan_points, merge_intervals, symmetric_ess_check, tactic_equilibria, verify_nash,
    EquilibriumReport, Player,
};
use qess_core::grid::uniform_grid;
use qess_core::invasion::{case_study_with, Case};
use qess_core::{
    mw_payoffs, EisertGame, EntangledInitialState, MwGame, Pairing, PayoffBimatrix,
    QuantumStrategy, StrategyKind, TacticProfile,
};

use crate::error::{CliError, CliResult};
use crate::game::{GameSpecFile, InitialStateSpec, PairingSpec, Scheme};
use crate::render::{self, fixed, Format};
use crate::{
    B2GridArgs, BosArgs, CaseArg, EssCheckArgs, EssScanArgs, GameArgs, InvadeArgs, NeScanArgs,
    PayoffArgs, StateArgs,
};
use std::f64::consts::{FRAC_PI_2, PI};

pub struct Context {
    pub format: Option<Format>,
    pub tol: f64,
}

impl Context {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

struct Resolved {
    scheme: Option<Scheme>,
    matrix: PayoffBimatrix,
    state: InitialStateSpec,
}

fn resolve(game: &GameArgs, state: Option<&StateArgs>) -> CliResult<Resolved> {
    let spec = match (&game.preset, &game.game) {
        (Some(p), None) => GameSpecFile {
            preset: Some(*p),
            ..GameSpecFile::default()
        },
        (None, Some(path)) => GameSpecFile::load(path)?,
        (None, None) => return Err(CliError::usage("one of --preset or --game is required")),
        (Some(_), Some(_)) => return Err(CliError::usage("--preset and --game are exclusive")),
    };
    let mut merged = spec.initial_state();
    if let Some(s) = state {
        merged.b2 = s.b2.or(merged.b2);
        merged.pairing = s.pairing.or(merged.pairing);
        merged.gamma = s.gamma.or(merged.gamma);
    }
    Ok(Resolved {
        scheme: game.scheme.or(spec.scheme),
        matrix: spec.matrix()?,
        state: merged,
    })
}

fn pairing(spec: Option<PairingSpec>) -> Pairing {
    spec.map(Pairing::from).unwrap_or(Pairing::Aligned)
}

fn pairing_name(p: Pairing) -> &'static str {
    match p {
        Pairing::Aligned => "aligned",
        Pairing::Crossed => "crossed",
    }
}

fn mw_state(state: &InitialStateSpec) -> CliResult<EntangledInitialState> {
    let b2 = state
        .b2
        .ok_or_else(|| CliError::usage("the mw scheme needs --b2 (or initial_state.b2)"))?;
    Ok(EntangledInitialState::from_b2(b2, pairing(state.pairing))?)
}

fn require_mw(scheme: Option<Scheme>, command: &str) -> CliResult<()> {
    match scheme {
        None | Some(Scheme::Mw) => Ok(()),
        Some(other) => Err(CliError::usage(format!(
            "{command} works on mw tactic games, not the {other:?} scheme"
        ))),
    }
}

fn b2_grid(args: &B2GridArgs) -> CliResult<Vec<f64>> {
    let grid = match &args.values {
        Some(v) => v.clone(),
        None => {
            if args.b2_steps == 0 {
                return Err(CliError::usage("--b2-steps must be at least 1"));
            }
            uniform_grid(args.b2_min, args.b2_max, args.b2_steps)
        }
    };
    if let Some(bad) = grid.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(CliError::usage(format!("b2 value {bad} is outside [0, 1]")));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(CliError::usage("b2 values must be ascending"));
    }
    Ok(grid)
}

fn verdict_rows(reports: &[EquilibriumReport<TacticProfile, f64>]) -> Vec<(TacticProfile, String)> {
    reports
        .iter()
        .map(|r| (r.candidate, r.verdict().to_string()))
        .collect()
}

pub fn payoff(ctx: &Context, args: &PayoffArgs) -> CliResult<String> {
    let g = resolve(&args.game, Some(&args.state))?;
    let scheme = g
        .scheme
        .ok_or_else(|| CliError::usage("payoff needs --scheme (or scheme in the game file)"))?;
    let (a, b) = match scheme {
        Scheme::Eisert => {
            let (Some(alice), Some(bob)) = (args.alice, args.bob) else {
                return Err(CliError::usage("the eisert scheme needs --alice and --bob"));
            };
            eisert_payoffs(
                &g.matrix,
                &alice,
                &bob,
                g.state.gamma.unwrap_or(MAX_ENTANGLEMENT),
            )?
        }
        Scheme::Mw | Scheme::Classical => {
            let (Some(p), Some(q)) = (args.p, args.q) else {
                return Err(CliError::usage(format!(
                    "the {scheme:?} scheme needs --p and --q"
                )));
            };
            let t = TacticProfile::new(p, q)?;
            if scheme == Scheme::Mw {
                mw_payoffs(&g.matrix, &mw_state(&g.state)?, &t)?
            } else {
                g.matrix.classical_mixed(t.p, t.q)
            }
        }
    };
    match ctx.format_or(Format::Table) {
        Format::Table => Ok(format!("{} {}\n", fixed(a), fixed(b))),
        Format::Csv => render::csv(&["payoff_a", "payoff_b"], &[vec![fixed(a), fixed(b)]]),
        Format::Json => render::json(&json!({ "payoff_a": a, "payoff_b": b })),
    }
}

pub fn ne_scan(ctx: &Context, args: &NeScanArgs) -> CliResult<String> {
    let g = resolve(&args.game, None)?;
    require_mw(g.scheme, "ne-scan")?;
    let pairing = pairing(args.pairing.or(g.state.pairing));
    let mut rows = Vec::new();
    for b2 in b2_grid(&args.grid)? {
        let game = MwGame::new(g.matrix, EntangledInitialState::from_b2(b2, pairing)?)?;
        for (t, verdict) in verdict_rows(&tactic_equilibria(&game, args.resolution, ctx.tol)?) {
            rows.push((b2, t, verdict));
        }
    }
    let header = ["b2", "p", "q", "verdict"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(b2, t, v)| vec![fixed(*b2), fixed(t.p), fixed(t.q), v.clone()])
        .collect();
    match ctx.format_or(Format::Csv) {
        Format::Csv => render::csv(&header, &cells),
        Format::Table => Ok(render::table(&header, &cells)),
        Format::Json => render::json(&Value::Array(
            rows.iter()
                .map(|(b2, t, v)| json!({ "b2": b2, "p": t.p, "q": t.q, "verdict": v }))
                .collect(),
        )),
    }
}

pub fn ess_scan(ctx: &Context, args: &EssScanArgs) -> CliResult<String> {
    let g = resolve(&args.game, None)?;
    require_mw(g.scheme, "ess-scan")?;
    let pairing = pairing(args.pairing.or(g.state.pairing));
    let grid = b2_grid(&args.grid)?;
    let points = ess_scan_points(
        &g.matrix,
        pairing,
        args.star,
        &grid,
        args.resolution,
        ctx.tol,
    )?;
    let header = ["b2", "verdict", "min_delta_a", "min_delta_b"];
    let cells: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            vec![
                fixed(p.b2),
                p.verdict.to_string(),
                fixed(p.min_delta_a),
                fixed(p.min_delta_b),
            ]
        })
        .collect();
    let intervals = merge_intervals(&points);
    match ctx.format_or(Format::Csv) {
        Format::Csv => render::csv(&header, &cells),
        Format::Table => {
            let iv: Vec<Vec<String>> = intervals
                .iter()
                .map(|i| vec![fixed(i.b2_start), fixed(i.b2_end), i.verdict.to_string()])
                .collect();
            Ok(render::table(&header, &cells)
                + "\n"
                + &render::table(&["b2_from", "b2_to", "verdict"], &iv))
        }
        Format::Json => render::json(&json!({
            "star": { "p": args.star.p, "q": args.star.q },
            "pairing": pairing_name(pairing),
            "points": points.iter().map(|p| json!({
                "b2": p.b2,
                "verdict": p.verdict.to_string(),
                "min_delta_a": p.min_delta_a,
                "min_delta_b": p.min_delta_b,
            })).collect::<Vec<_>>(),
            "intervals": intervals.iter().map(|i| json!({
                "b2_from": i.b2_start,
                "b2_to": i.b2_end,
                "verdict": i.verdict.to_string(),
            })).collect::<Vec<_>>(),
        })),
    }
}

fn key_value(format: Format, fields: &[(&str, String)], json_value: Value) -> CliResult<String> {
    match format {
        Format::Table => Ok(fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()),
        Format::Csv => {
            let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            render::csv(&header, &[fields.iter().map(|(_, v)| v.clone()).collect()])
        }
        Format::Json => render::json(&json_value),
    }
}

fn eisert_mutants(
    candidate: &QuantumStrategy,
    theta_steps: usize,
    phi_steps: usize,
) -> CliResult<Vec<QuantumStrategy>> {
    if theta_steps == 0 || phi_steps == 0 {
        return Err(CliError::usage("mutant grid sizes must be at least 1"));
    }
    let thetas = uniform_grid(0.0, PI, theta_steps);
    let mut out = Vec::new();
    match candidate.kind() {
        StrategyKind::OneParameter => {
            for t in thetas {
                out.push(QuantumStrategy::one_parameter(t)?);
            }
        }
        StrategyKind::TwoParameter => {
            for t in thetas {
                for p in uniform_grid(0.0, FRAC_PI_2, phi_steps) {
                    out.push(QuantumStrategy::two_parameter(t, p)?);
                }
            }
        }
    }
    Ok(out)
}

pub fn ess_check(ctx: &Context, args: &EssCheckArgs) -> CliResult<String> {
    let g = resolve(&args.game, Some(&args.state))?;
    let format = ctx.format_or(Format::Table);
    match g.scheme.unwrap_or(Scheme::Mw) {
        Scheme::Eisert => {
            let candidate = args
                .candidate
                .ok_or_else(|| CliError::usage("the eisert scheme needs --candidate"))?;
            if !g.matrix.is_symmetric() {
                return Err(CliError::usage(
                    "symmetric ESS checks need a symmetric bimatrix",
                ));
            }
            let game = EisertGame::new(g.matrix, g.state.gamma.unwrap_or(MAX_ENTANGLEMENT))?;
            let mutants = eisert_mutants(&candidate, args.theta_steps, args.phi_steps)?;
            let r = symmetric_ess_check(
                |s: &QuantumStrategy, t: &QuantumStrategy| game.symmetric_payoff(s, t),
                &candidate,
                &mutants,
                |x, y| x.equivalent(y),
                ctx.tol,
            )?;
            let (worst, margin) = r
                .witnesses
                .first()
                .map(|w| (w.deviation.to_string(), w.difference))
                .unwrap_or_else(|| ("none".to_string(), 0.0));
            let fields = [
                ("candidate", candidate.to_string()),
                ("mutants", mutants.len().to_string()),
                ("is_nash", r.is_nash.to_string()),
                ("is_strict", r.is_strict.to_string()),
                ("is_ess", r.is_ess.to_string()),
                ("verdict", r.verdict().to_string()),
                ("worst_mutant", worst.clone()),
                ("margin", fixed(margin)),
            ];
            let value = json!({
                "candidate": candidate.to_string(),
                "mutants": mutants.len(),
                "is_nash": r.is_nash,
                "is_strict": r.is_strict,
                "is_ess": r.is_ess,
                "verdict": r.verdict().to_string(),
                "worst_mutant": worst,
                "margin": margin,
            });
            key_value(format, &fields, value)
        }
        scheme => {
            let init = if scheme == Scheme::Classical {
                EntangledInitialState::unentangled(Pairing::Aligned)
            } else {
                mw_state(&g.state)?
            };
            let game = MwGame::new(g.matrix, init)?;
            let r = verify_nash(&game, args.star, args.resolution, ctx.tol)?;
            let min_a = r.min_difference(Player::Row).unwrap_or(0.0);
            let min_b = r.min_difference(Player::Column).unwrap_or(0.0);
            let fields = [
                ("p", fixed(args.star.p)),
                ("q", fixed(args.star.q)),
                ("b2", fixed(init.b2())),
                ("pairing", pairing_name(init.pairing()).to_string()),
                ("is_nash", r.is_nash.to_string()),
                ("is_strict", r.is_strict.to_string()),
                ("is_ess", r.is_ess.to_string()),
                ("verdict", r.verdict().to_string()),
                ("min_delta_a", fixed(min_a)),
                ("min_delta_b", fixed(min_b)),
            ];
            let value = json!({
                "p": args.star.p,
                "q": args.star.q,
                "b2": init.b2(),
                "pairing": pairing_name(init.pairing()),
                "is_nash": r.is_nash,
                "is_strict": r.is_strict,
                "is_ess": r.is_ess,
                "verdict": r.verdict().to_string(),
                "min_delta_a": min_a,
                "min_delta_b": min_b,
            });
            key_value(format, &fields, value)
        }
    }
}

pub fn invade(ctx: &Context, args: &InvadeArgs) -> CliResult<String> {
    let case = match args.case {
        CaseArg::A => Case::A,
        CaseArg::B => Case::B,
        CaseArg::C => Case::C,
    };
    let mutant = match args.phi {
        Some(phi) => QuantumStrategy::two_parameter(args.theta, phi)?,
        None => QuantumStrategy::one_parameter(args.theta)?,
    };
    let s = case_study_with(case, mutant, args.eps, args.steps)?;
    match ctx.format_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<Vec<String>> = s
                .trajectory
                .iter()
                .enumerate()
                .map(|(i, f)| vec![i.to_string(), fixed(*f)])
                .collect();
            Ok(render::csv(&["step", "mutant_frequency"], &rows)?
                + &format!("verdict={}\n", s.verdict))
        }
        Format::Table => {
            let t = &s.table;
            Ok(format!(
                "case: {}\nincumbent: {}\nmutant: {}\n\
                 P(A,A) P(A,B) P(B,A) P(B,B): {} {} {} {}\n\
                 first condition: {}\nsecond condition: {}\n\
                 invasion barrier: {}\nfinal mutant share: {}\nverdict: {}\n",
                s.case,
                s.incumbent,
                s.mutant,
                fixed(t.p_aa),
                fixed(t.p_ab),
                fixed(t.p_ba),
                fixed(t.p_bb),
                fixed(s.stability.first),
                fixed(s.stability.second),
                fixed(s.barrier),
                fixed(s.final_share()),
                s.verdict
            ))
        }
        Format::Json => render::json(&json!({
            "case": s.case.to_string(),
            "incumbent": s.incumbent.to_string(),
            "mutant": s.mutant.to_string(),
            "table": {
                "p_aa": s.table.p_aa,
                "p_ab": s.table.p_ab,
                "p_ba": s.table.p_ba,
                "p_bb": s.table.p_bb,
            },
            "first_condition": s.stability.first,
            "second_condition": s.stability.second,
            "barrier": s.barrier,
            "trajectory": s.trajectory,
            "verdict": s.verdict.to_string(),
        })),
    }
}

pub fn bos(ctx: &Context, args: &BosArgs) -> CliResult<String> {
    let [alpha, beta, gamma] = args.payoffs;
    let matrix = PayoffBimatrix::battle_of_sexes(alpha, beta, gamma)?;
    let init = EntangledInitialState::from_b2(args.b2, args.pairing.into())?;
    let game = MwGame::new(matrix, init)?;
    let rows = verdict_rows(&tactic_equilibria(&game, args.resolution, ctx.tol)?);
    let header = ["p", "q", "verdict"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(t, v)| vec![fixed(t.p), fixed(t.q), v.clone()])
        .collect();
    match ctx.format_or(Format::Table) {
        Format::Table => Ok(render::table(&header, &cells)),
        Format::Csv => render::csv(&header, &cells),
        Format::Json => render::json(&Value::Array(
            rows.iter()
                .map(|(t, v)| json!({ "p": t.p, "q": t.q, "verdict": v }))
                .collect(),
        )),
    }
}
