use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use grammate::combinators::{
    block_swap_pair, complement_pair, direct_sum_pair, join_pair, kron_pair, kron_swap,
    CombinatorError,
};
use grammate::gale_ryser::{construct_urs, spread_construction, GaleRyserError};
use grammate::gram::{
    convertibility, is_gram_pair, is_realizable_witness, ConvertibilityChecks, GramError, GramPair,
    GramSingularReport,
};
use grammate::iso::{
    are_isomorphic, is_fixable, iso_distinct_sv, remaining_context, sum_separation, FixVerdict,
    IsoError, IsoVerdict, IsoWitness, DEFAULT_NODE_CAP,
};
use grammate::numerics::{reconstruct_from_grams, NumericsError};
use grammate::oracle::{
    enumerate_gram_pairs, enumerate_mates_of, OracleError, PairFilters, DEFAULT_MATE_CAP,
};
use grammate::rank_forms::{
    classify_rank1, classify_rank2, rank1_complete, rank1_gram_data, rank2_complete,
    rank2_gram_data, rank2_realizable, rank2_witness_check, FormError, Rank2Form,
};
use grammate::{
    parse_binary, parse_int_matrix, parse_matrix, serialize_matrix, BinaryMatrix, Dense,
    MatrixError, Permutation, SignedMatrix,
};

use crate::args::{Cli, Command, GlobalOpts, Op};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: MatrixError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Gram(#[from] GramError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Combinator(#[from] CombinatorError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    GaleRyser(#[from] GaleRyserError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    Undecided,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 3,
            Outcome::Undecided => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Undecided => "undecided",
        }
    }
}

pub struct Report {
    pub text: String,
    pub json: Value,
    pub outcome: Outcome,
}

impl Report {
    fn new(outcome: Outcome, text: String, json: Value) -> Self {
        Report {
            text,
            json,
            outcome,
        }
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Convertible { .. } => "convertible",
        Command::Classify { .. } => "classify",
        Command::Complete { .. } => "complete",
        Command::GramData { .. } => "gram-data",
        Command::Urs { .. } => "urs",
        Command::Construct { .. } => "construct",
        Command::Isomorphic { .. } => "isomorphic",
        Command::Fixable { .. } => "fixable",
        Command::Enumerate { .. } => "enumerate",
        Command::MatesOf { .. } => "mates-of",
        Command::Reconstruct { .. } => "reconstruct",
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn parse_err(path: &Path) -> impl FnOnce(MatrixError) -> CliError + '_ {
    move |source| CliError::Parse {
        path: path.display().to_string(),
        source,
    }
}

fn load_binary(path: &Path) -> Result<BinaryMatrix, CliError> {
    parse_binary(&read(path)?).map_err(parse_err(path))
}

fn load_signed(path: &Path) -> Result<SignedMatrix, CliError> {
    parse_matrix(&read(path)?).map_err(parse_err(path))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn load_pair(a: &Path, b: &Path) -> Result<GramPair, CliError> {
    let (x, y) = (load_binary(a)?, load_binary(b)?);
    is_gram_pair(&x, &y)?.ok_or_else(|| {
        CliError::Usage(format!(
            "{} and {} are not Gram mates",
            a.display(),
            b.display()
        ))
    })
}

fn fmt_f(x: f64) -> String {
    let s = format!("{:.9}", x);
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| fmt_f(x)).collect();
    format!("({})", parts.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn mat_json<M: Dense + ?Sized>(m: &M) -> Value {
    let rows: Vec<Vec<i64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j)).collect())
        .collect();
    json!(rows)
}

fn perm_text(p: &Permutation) -> String {
    let parts: Vec<String> = p.image().iter().map(|x| x.to_string()).collect();
    parts.join(" ")
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { a, b } => verify(a, b),
        Command::Convertible { a, b } => convertible(g, a, b),
        Command::Classify { e } => classify(e),
        Command::Complete { e } => complete(g, e),
        Command::GramData { e, witness } => gram_data(g, e, witness.as_deref()),
        Command::Urs { rows, cols, spread } => urs(g, rows, cols.as_deref(), *spread),
        Command::Construct { op, inputs } => construct(g, *op, inputs),
        Command::Isomorphic { a, b, distinct_sv } => isomorphic(g, a, b, *distinct_sv),
        Command::Fixable { a, b } => fixable(g, a, b),
        Command::Enumerate {
            m,
            n,
            rank,
            rowsums,
            colsums,
        } => enumerate(*m, *n, *rank, rowsums.clone(), colsums.clone()),
        Command::MatesOf { a } => mates_of(g, a),
        Command::Reconstruct { grow, gcol } => reconstruct(g, grow, gcol),
    }
}

fn verify(a: &Path, b: &Path) -> Result<Report, CliError> {
    let (x, y) = (load_binary(a)?, load_binary(b)?);
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(CliError::Usage(format!(
            "shapes differ: {}x{} vs {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(match is_gram_pair(&x, &y)? {
        Some(p) => Report::new(
            Outcome::Yes,
            format!("gram mates: yes\ndiff rank: {}\n", p.diff_rank()),
            json!({ "mates": true, "diff_rank": p.diff_rank() }),
        ),
        None => {
            let reason = if x == y {
                "A = B"
            } else if x.gram_rows() != y.gram_rows() {
                "A A^T != B B^T"
            } else {
                "A^T A != B^T B"
            };
            Report::new(
                Outcome::No,
                format!("gram mates: no\nreason: {}\n", reason),
                json!({ "mates": false, "reason": reason }),
            )
        }
    })
}

fn singular_text(out: &mut String, g: &GramSingularReport) {
    if let Some(m) = g.m_matrix {
        let _ = writeln!(
            out,
            "M = [[{}, {}], [{}, {}]]",
            fmt_f(m[0][0]),
            fmt_f(m[0][1]),
            fmt_f(m[1][0]),
            fmt_f(m[1][1])
        );
    }
    for (i, &s) in g.values.iter().enumerate() {
        let _ = writeln!(out, "sigma_{} = {}", i + 1, fmt_f(s));
        let _ = writeln!(out, "  right = {}", fmt_vec(&g.right_vectors[i]));
        let _ = writeln!(out, "  left  = {}", fmt_vec(&g.left_vectors[i]));
        if let Some(&(z1, z2, lam)) = g.eigenpairs.get(i) {
            let _ = writeln!(
                out,
                "  eigenpair = (zeta1 {}, zeta2 {}, lambda {})",
                fmt_f(z1),
                fmt_f(z2),
                fmt_f(lam)
            );
        }
    }
}

fn convertible(g: &GlobalOpts, a: &Path, b: &Path) -> Result<Report, CliError> {
    let (x, y) = (load_binary(a)?, load_binary(b)?);
    let Some(p) = is_gram_pair(&x, &y)? else {
        return Ok(Report::new(
            Outcome::No,
            "gram mates: no\n".into(),
            json!({ "mates": false }),
        ));
    };
    let r = convertibility(&p, g.tol)?;
    let mut text = format!(
        "gram mates: yes\ndiff rank: {}\nconvertible: {}\nchecks:\n",
        p.diff_rank(),
        yes_no(r.convertible)
    );
    let width = ConvertibilityChecks::NAMES
        .iter()
        .map(|n| n.len())
        .max()
        .unwrap_or(0);
    for (name, ok) in ConvertibilityChecks::NAMES.iter().zip(r.checks.as_array()) {
        let _ = writeln!(text, "  {:width$}  {}", name, yes_no(ok), width = width);
    }
    if let Some(gs) = &r.gram_singular {
        text.push_str("gram singular values:\n");
        singular_text(&mut text, gs);
    }
    let outcome = if r.convertible {
        Outcome::Yes
    } else {
        Outcome::No
    };
    Ok(Report::new(
        outcome,
        text,
        json!({ "mates": true, "diff_rank": p.diff_rank(), "report": r }),
    ))
}

fn rank2_line(f: &Rank2Form) -> String {
    let idx: Vec<String> = f
        .indices
        .named(f.mtype)
        .iter()
        .map(|(n, v)| format!("{}={}", n, v))
        .collect();
    format!(
        "rank 2, {:?}{}, {}, {}",
        f.mtype,
        if f.transposed { " (transposed)" } else { "" },
        idx.join(" "),
        if rank2_realizable(f) {
            "realizable"
        } else {
            "not realizable"
        }
    )
}

fn classify(path: &Path) -> Result<Report, CliError> {
    let e = load_signed(path)?;
    let rank = e.rank();
    let (line, outcome, detail) = match rank {
        0 => ("rank 0, zero matrix".to_string(), Outcome::No, json!(null)),
        1 => match classify_rank1(&e) {
            Ok(f) => (
                format!("rank 1, k1={} k2={}, realizable", f.k1, f.k2),
                Outcome::Yes,
                json!({ "form": "rank1", "k1": f.k1, "k2": f.k2, "realizable": true,
                        "row_perm": f.row_perm.image(), "col_perm": f.col_perm.image() }),
            ),
            Err(err) => (
                format!("rank 1, no canonical form: {}", err),
                Outcome::No,
                json!(null),
            ),
        },
        2 => match classify_rank2(&e) {
            Ok(f) => {
                let realizable = rank2_realizable(&f);
                (
                    rank2_line(&f),
                    if realizable {
                        Outcome::Yes
                    } else {
                        Outcome::No
                    },
                    json!({ "form": f.mtype, "indices": f.indices, "transposed": f.transposed,
                            "realizable": realizable,
                            "row_perm": f.row_perm.image(), "col_perm": f.col_perm.image() }),
                )
            }
            Err(err) => (
                format!("rank 2, no canonical form: {}", err),
                Outcome::No,
                json!(null),
            ),
        },
        r => (
            format!("rank {}, no canonical form", r),
            Outcome::No,
            json!(null),
        ),
    };
    Ok(Report::new(
        outcome,
        format!("{}\n", line),
        json!({ "rank": rank, "summary": line, "classification": detail }),
    ))
}

/// A verified witness for `e`, or `None` when `e` is not realizable.
fn witness_for(e: &SignedMatrix) -> Result<Option<BinaryMatrix>, CliError> {
    let a = match e.rank() {
        1 => rank1_complete(&classify_rank1(e)?),
        2 => match rank2_complete(&classify_rank2(e)?) {
            Ok(a) => a,
            Err(FormError::NotRealizable) => return Ok(None),
            Err(err) => return Err(err.into()),
        },
        r => {
            return Err(CliError::Usage(format!(
                "completion needs rank 1 or 2, found {}",
                r
            )))
        }
    };
    if !is_realizable_witness(e, &a)? {
        return Err(CliError::Usage(
            "constructed witness failed verification".into(),
        ));
    }
    Ok(Some(a))
}

fn complete(g: &GlobalOpts, path: &Path) -> Result<Report, CliError> {
    let e = load_signed(path)?;
    match witness_for(&e)? {
        None => Ok(Report::new(
            Outcome::No,
            "not realizable\n".into(),
            json!({ "realizable": false }),
        )),
        Some(a) => {
            let text = serialize_matrix(&a);
            if let Some(out) = &g.out {
                write(out, &text)?;
            }
            Ok(Report::new(
                Outcome::Yes,
                text,
                json!({ "realizable": true, "witness": mat_json(&a) }),
            ))
        }
    }
}

fn gram_data(g: &GlobalOpts, path: &Path, witness: Option<&Path>) -> Result<Report, CliError> {
    let e = load_signed(path)?;
    let w = witness.map(load_binary).transpose()?;
    if let Some(w) = &w {
        if w.rows() != e.rows() || w.cols() != e.cols() || !is_realizable_witness(&e, w)? {
            return Ok(Report::new(
                Outcome::No,
                "witness does not realize E\n".into(),
                json!({ "error": "witness does not realize E" }),
            ));
        }
    }
    let mut text = String::new();
    let result = match e.rank() {
        1 => {
            let f = classify_rank1(&e)?;
            let _ = writeln!(text, "rank 1, k1={} k2={}", f.k1, f.k2);
            Ok(rank1_gram_data(&f))
        }
        2 => {
            let f = classify_rank2(&e)?;
            let _ = writeln!(text, "{}", rank2_line(&f));
            let w = match w {
                Some(w) => Some(w),
                None => {
                    let built = witness_for(&e)?;
                    if built.is_some() {
                        text.push_str("witness: constructed\n");
                    }
                    built
                }
            };
            match w {
                None => Err(FormError::NotRealizable),
                Some(w) => {
                    let check = rank2_witness_check(&w, &f)?;
                    rank2_gram_data(&f, check.profile.as_ref())
                }
            }
        }
        r => {
            return Err(CliError::Usage(format!(
                "closed forms need rank 1 or 2, found {}",
                r
            )))
        }
    };
    let _ = g;
    match result {
        Ok(rep) => {
            let _ = writeln!(text, "source: {:?}", rep.source);
            singular_text(&mut text, &rep);
            Ok(Report::new(
                Outcome::Yes,
                text,
                json!({ "convertible": true, "gram": rep }),
            ))
        }
        Err(err @ (FormError::NotConvertible | FormError::NotRealizable)) => {
            let _ = writeln!(text, "{}", err);
            Ok(Report::new(
                Outcome::No,
                text,
                json!({ "convertible": false, "reason": err.to_string() }),
            ))
        }
        Err(err) => Err(err.into()),
    }
}

fn urs(
    g: &GlobalOpts,
    rows: &[usize],
    cols: Option<&[usize]>,
    spread: Option<usize>,
) -> Result<Report, CliError> {
    let built = match (cols, spread) {
        (Some(s), _) => construct_urs(rows, s),
        (None, Some(n)) => spread_construction(rows, n),
        (None, None) => return Err(CliError::Usage("need --cols or --spread".into())),
    };
    match built {
        Ok(m) => {
            let text = serialize_matrix(&m);
            if let Some(out) = &g.out {
                write(out, &text)?;
            }
            Ok(Report::new(
                Outcome::Yes,
                text,
                json!({ "feasible": true, "matrix": mat_json(&m) }),
            ))
        }
        Err(GaleRyserError::Infeasible { .. }) | Err(GaleRyserError::TooLarge { .. }) => {
            Ok(Report::new(
                Outcome::No,
                "infeasible\n".into(),
                json!({ "feasible": false }),
            ))
        }
        Err(err) => Err(err.into()),
    }
}

fn pair_text(p: &GramPair) -> String {
    format!(
        "A:\n{}B:\n{}",
        serialize_matrix(p.a()),
        serialize_matrix(p.b())
    )
}

fn construct(g: &GlobalOpts, op: Op, inputs: &[std::path::PathBuf]) -> Result<Report, CliError> {
    if inputs.len() != op.arity() {
        return Err(CliError::Usage(format!(
            "{} takes {} input files, got {}",
            op.name(),
            op.arity(),
            inputs.len()
        )));
    }
    let built = match op {
        Op::Complement => complement_pair(&load_pair(&inputs[0], &inputs[1])?),
        Op::KronSwap => kron_swap(&load_pair(&inputs[0], &inputs[1])?),
        Op::BlockSwap => block_swap_pair(&load_binary(&inputs[0])?, &load_binary(&inputs[1])?),
        Op::Dirsum | Op::Join | Op::Kron => {
            let p1 = load_pair(&inputs[0], &inputs[1])?;
            let p2 = load_pair(&inputs[2], &inputs[3])?;
            match op {
                Op::Dirsum => direct_sum_pair(&p1, &p2),
                Op::Join => join_pair(&p1, &p2),
                _ => kron_pair(&p1, &p2),
            }
        }
    };
    let p = match built {
        Ok(p) => p,
        Err(err @ (CombinatorError::Degenerate | CombinatorError::Verification(_))) => {
            return Ok(Report::new(
                Outcome::No,
                format!("{}\n", err),
                json!({ "op": op.name(), "error": err.to_string() }),
            ))
        }
        Err(err) => return Err(err.into()),
    };
    let mut text = format!(
        "{}, diff rank {}\n{}",
        op.name(),
        p.diff_rank(),
        pair_text(&p)
    );
    if let Some(prefix) = &g.out_prefix {
        let (pa, pb) = (format!("{}_A.mtxt", prefix), format!("{}_B.mtxt", prefix));
        write(Path::new(&pa), &serialize_matrix(p.a()))?;
        write(Path::new(&pb), &serialize_matrix(p.b()))?;
        let _ = writeln!(text, "wrote {} {}", pa, pb);
    }
    Ok(Report::new(
        Outcome::Yes,
        text,
        json!({ "op": op.name(), "diff_rank": p.diff_rank(), "a": mat_json(p.a()), "b": mat_json(p.b()) }),
    ))
}

fn witness_text(text: &mut String, w: &IsoWitness) {
    let _ = writeln!(text, "row permutation: {}", perm_text(&w.row_perm));
    let _ = writeln!(text, "column permutation: {}", perm_text(&w.col_perm));
}

fn isomorphic(g: &GlobalOpts, a: &Path, b: &Path, distinct: bool) -> Result<Report, CliError> {
    let cap = g.cap.unwrap_or(DEFAULT_NODE_CAP);
    let v = if distinct {
        iso_distinct_sv(&load_pair(a, b)?, g.rel_tol, cap)?
    } else {
        are_isomorphic(&load_binary(a)?, &load_binary(b)?, cap)?
    };
    let mut text = String::new();
    let outcome = match &v {
        IsoVerdict::Isomorphic { witness, nodes } => {
            let _ = writeln!(text, "isomorphic: yes\nnodes: {}", nodes);
            witness_text(&mut text, witness);
            Outcome::Yes
        }
        IsoVerdict::NonIsomorphic { nodes } => {
            let _ = writeln!(text, "isomorphic: no\nnodes: {}", nodes);
            Outcome::No
        }
        IsoVerdict::Undecided { nodes } => {
            let _ = writeln!(
                text,
                "isomorphic: undecided (cap {} reached)\nnodes: {}",
                cap, nodes
            );
            Outcome::Undecided
        }
    };
    Ok(Report::new(
        outcome,
        text,
        json!({ "involutions_only": distinct, "result": v }),
    ))
}

fn fixable(g: &GlobalOpts, a: &Path, b: &Path) -> Result<Report, CliError> {
    let cap = g.cap.unwrap_or(DEFAULT_NODE_CAP);
    let p = load_pair(a, b)?;
    let ctx = remaining_context(&p)?;
    let sep = sum_separation(&ctx);
    let v = is_fixable(&ctx, cap);
    let mut text = format!("k1={} k2={}\n", ctx.k1, ctx.k2);
    let outcome = match &v {
        FixVerdict::Fixable {
            case,
            witness,
            nodes,
        } => {
            let _ = writeln!(text, "fixable: yes ({:?})\nnodes: {}", case, nodes);
            witness_text(&mut text, witness);
            Outcome::Yes
        }
        FixVerdict::NotFixable { nodes } => {
            let _ = writeln!(text, "fixable: no\nnodes: {}", nodes);
            Outcome::No
        }
        FixVerdict::Undecided { nodes } => {
            let _ = writeln!(
                text,
                "fixable: undecided (cap {} reached)\nnodes: {}",
                cap, nodes
            );
            Outcome::Undecided
        }
    };
    let _ = writeln!(text, "sum separation: {}", yes_no(sep));
    Ok(Report::new(
        outcome,
        text,
        json!({ "k1": ctx.k1, "k2": ctx.k2, "sum_separation": sep, "result": v }),
    ))
}

fn enumerate(
    m: usize,
    n: usize,
    rank: Option<usize>,
    rowsums: Option<Vec<usize>>,
    colsums: Option<Vec<usize>>,
) -> Result<Report, CliError> {
    let filters = PairFilters {
        row_sums: rowsums,
        col_sums: colsums,
        diff_rank: rank,
        cell_cap: None,
    };
    let pairs = enumerate_gram_pairs(m, n, &filters)?;
    let mut text = format!("pairs: {}\n", pairs.len());
    let mut list = Vec::with_capacity(pairs.len());
    for (i, p) in pairs.iter().enumerate() {
        let _ = write!(
            text,
            "\npair {} (diff rank {})\n{}",
            i + 1,
            p.diff_rank(),
            pair_text(p)
        );
        list.push(
            json!({ "a": mat_json(p.a()), "b": mat_json(p.b()), "diff_rank": p.diff_rank() }),
        );
    }
    Ok(Report::new(
        Outcome::Yes,
        text,
        json!({ "m": m, "n": n, "count": pairs.len(), "pairs": list }),
    ))
}

fn mates_of(g: &GlobalOpts, a: &Path) -> Result<Report, CliError> {
    let x = load_binary(a)?;
    let cap = g.cap.unwrap_or(DEFAULT_MATE_CAP);
    let mates = match enumerate_mates_of(&x, cap) {
        Ok(m) => m,
        Err(OracleError::NodeCap(c)) => {
            return Ok(Report::new(
                Outcome::Undecided,
                format!("mates: undecided (cap {} reached)\n", c),
                json!({ "undecided": true, "cap": c }),
            ))
        }
        Err(err) => return Err(err.into()),
    };
    let mut text = format!("mates: {}\n", mates.len());
    for m in &mates {
        let _ = write!(text, "\n{}", serialize_matrix(m));
    }
    let outcome = if mates.is_empty() {
        Outcome::No
    } else {
        Outcome::Yes
    };
    let list: Vec<Value> = mates.iter().map(mat_json).collect();
    Ok(Report::new(
        outcome,
        text,
        json!({ "count": mates.len(), "mates": list }),
    ))
}

fn reconstruct(g: &GlobalOpts, grow: &Path, gcol: &Path) -> Result<Report, CliError> {
    let g1 = parse_int_matrix(&read(grow)?).map_err(parse_err(grow))?;
    let g2 = parse_int_matrix(&read(gcol)?).map_err(parse_err(gcol))?;
    let found = match reconstruct_from_grams(&g1, &g2, g.tol, g.rel_tol) {
        Ok(r) => r,
        Err(NumericsError::SpectraMismatch) => {
            return Ok(Report::new(
                Outcome::No,
                "# positive spectra differ\n".into(),
                json!({ "matrices": [], "spectra_match": false }),
            ))
        }
        Err(err) => return Err(err.into()),
    };
    let mut blocks: Vec<String> = Vec::new();
    if found.wide_kernel {
        blocks.push("# kernel dimension above one\n".into());
    }
    blocks.extend(found.matrices.iter().map(|m| serialize_matrix(m)));
    let outcome = if found.matrices.is_empty() {
        Outcome::No
    } else {
        Outcome::Yes
    };
    let list: Vec<Value> = found.matrices.iter().map(mat_json).collect();
    Ok(Report::new(
        outcome,
        blocks.join("\n"),
        json!({ "matrices": list, "wide_kernel": found.wide_kernel }),
    ))
}
