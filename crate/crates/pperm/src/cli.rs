//! Command-line front end: group ingestion, analysis commands, the
//! verification harness, and stable output in pretty or records format.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::catalog::load_group_source;
use crate::functor::{
    compose_idempotents, essential_report, functor_decomposition, ComposeSupport,
};
use crate::pairs::{enumerate_diagonal_pairs, enumerate_pairs, is_ddelta, reduce_pair};
use crate::ppring::TRing;
use crate::records;
use crate::verify::{run_suite, Suite};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "pperm",
    about = "Exact computations in rings of p-permutation modules",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Records,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Group source: a file path or catalog:NAME (e.g. catalog:S3)
    #[arg(long)]
    pub group: String,
    /// The prime p
    #[arg(long)]
    pub prime: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ComposeArgs {
    #[command(flatten)]
    pub base: GroupArgs,
    /// Right-hand group G; defaults to --group (so H = G)
    #[arg(long)]
    pub group2: Option<String>,
    /// Index into the diagonal pair list of H x G (printed by this command)
    #[arg(long)]
    pub dpair: usize,
    /// Index into the pair list of G (printed by analyze)
    #[arg(long)]
    pub pair: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite: idempotents | biset | functor | essential | cyclo | all
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Catalog groups up to this order are verified
    #[arg(long, default_value_t = 24)]
    pub max_order: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, conjugacy classes, pair classes, D-Delta flags and reductions
    Analyze(GroupArgs),
    /// Primitive idempotents of FT(G) and their species table
    Idempotents(GroupArgs),
    /// Partition of the pair classes by the labels of their reductions
    Decompose(GroupArgs),
    /// Dimensions of the simple evaluations at this group
    SimpleDims(GroupArgs),
    /// Essential algebra: nonzeroness, witness pair, and dimension
    Essential(GroupArgs),
    /// Compose a twisted diagonal idempotent of H x G with one of FT(G)
    Compose(ComposeArgs),
    /// Run verification suites over the built-in catalog
    Verify(VerifyArgs),
}

/// Executes a parsed command, returning the full output and the exit code.
pub fn run(cli: Cli) -> Result<(String, i32)> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(&args).map(|s| (s, 0)),
        Command::Idempotents(args) => cmd_idempotents(&args).map(|s| (s, 0)),
        Command::Decompose(args) => cmd_decompose(&args).map(|s| (s, 0)),
        Command::SimpleDims(args) => cmd_simple_dims(&args).map(|s| (s, 0)),
        Command::Essential(args) => cmd_essential(&args).map(|s| (s, 0)),
        Command::Compose(args) => cmd_compose(&args).map(|s| (s, 0)),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn ring_for(args: &GroupArgs) -> Result<std::sync::Arc<TRing>> {
    let g = load_group_source(&args.group)?;
    TRing::new(&g, args.prime)
}

fn cmd_analyze(args: &GroupArgs) -> Result<String> {
    let ring = ring_for(args)?;
    let g = ring.group();
    if args.format == Format::Records {
        let mut recs = vec![records::group_value(&ring)];
        for (i, class) in g.conjugacy_classes().iter().enumerate() {
            recs.push(records::class_value(i, class, &ring));
        }
        for (i, pair) in ring.pairs().iter().enumerate() {
            recs.push(records::pair_value(i, pair));
        }
        return Ok(records::render_lines(&recs));
    }
    let mut out = String::new();
    out.push_str(&format!(
        "group {} (order {}), p = {}, working modulus {}\n",
        g.name(),
        g.order(),
        ring.prime(),
        ring.modulus()
    ));
    let classes = g.conjugacy_classes();
    out.push_str(&format!("conjugacy classes: {}\n", classes.len()));
    for (i, c) in classes.iter().enumerate() {
        out.push_str(&format!(
            "  class {:>2}: rep {:>3}, size {:>2}, order {:>3}, p'-element {}\n",
            i,
            c[0],
            c.len(),
            g.elem_order(c[0]),
            g.is_pprime_element(c[0], ring.prime())
        ));
    }
    out.push_str(&format!("pair classes [Q_(G,p)]: {}\n", ring.pairs().len()));
    for (i, pair) in ring.pairs().iter().enumerate() {
        let red = reduce_pair(pair)?;
        out.push_str(&format!(
            "  [{:>2}] |P|={:>2} s={:>3} ord(s)={:>2} |<Ps>|={:>3} ddelta={:<5} reduction: |P~|={} ord(s~)={} |span~|={}\n",
            i,
            pair.p_subgroup().order(),
            pair.elem(),
            pair.elem_order(),
            pair.span().order(),
            is_ddelta(pair),
            red.p_subgroup().order(),
            red.elem_order(),
            red.span().order(),
        ));
    }
    Ok(out)
}

fn aligned_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        for i in 0..cols {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{:>width$}", cells[i], width = widths[i]));
        }
        out.push('\n');
    };
    emit(&mut out, headers);
    for row in rows {
        emit(&mut out, row);
    }
    out
}

fn cmd_idempotents(args: &GroupArgs) -> Result<String> {
    let ring = ring_for(args)?;
    let mut recs = Vec::new();
    let mut rows = Vec::new();
    for (i, pair) in ring.pairs().iter().enumerate() {
        let f = ring.idempotent(pair)?;
        let terms = f.terms().map_or(0, |t| t.len());
        let species = f.species().clone();
        if args.format == Format::Records {
            recs.push(records::idempotent_value(i, terms, &species));
        } else {
            let mut row = vec![format!("F[{}]", i), terms.to_string()];
            row.extend(species.values.iter().map(|c| c.to_string()));
            rows.push(row);
        }
    }
    if args.format == Format::Records {
        return Ok(records::render_lines(&recs));
    }
    let mut headers = vec!["idempotent".to_string(), "terms".to_string()];
    headers.extend((0..ring.pairs().len()).map(|j| format!("tau[{}]", j)));
    let mut out = format!(
        "primitive idempotents of FT({}) at p = {}\n",
        ring.group().name(),
        ring.prime()
    );
    out.push_str(&aligned_table(&headers, &rows));
    Ok(out)
}

fn cmd_decompose(args: &GroupArgs) -> Result<String> {
    let ring = ring_for(args)?;
    let dec = functor_decomposition(&ring)?;
    if args.format == Format::Records {
        let recs: Vec<Value> = (0..dec.blocks.len())
            .map(|i| records::block_value(&dec, i))
            .collect();
        return Ok(records::render_lines(&recs));
    }
    let mut out = format!(
        "block decomposition of FT({}) at p = {}: {} blocks over {} pair classes\n",
        ring.group().name(),
        ring.prime(),
        dec.blocks.len(),
        ring.pairs().len()
    );
    for (label, idxs) in &dec.blocks {
        out.push_str(&format!(
            "  label {:<28} dim {:>2}  pairs {:?}\n",
            label.to_string(),
            idxs.len(),
            idxs
        ));
    }
    Ok(out)
}

fn cmd_simple_dims(args: &GroupArgs) -> Result<String> {
    let ring = ring_for(args)?;
    let dec = functor_decomposition(&ring)?;
    if args.format == Format::Records {
        let recs: Vec<Value> = dec
            .blocks
            .iter()
            .map(|(label, idxs)| records::simple_dim_value(label, idxs.len()))
            .collect();
        return Ok(records::render_lines(&recs));
    }
    let headers = vec![
        "label".to_string(),
        "|span|".to_string(),
        "dim".to_string(),
    ];
    let rows: Vec<Vec<String>> = dec
        .blocks
        .iter()
        .map(|(label, idxs)| {
            vec![
                label.to_string(),
                label.span_order().to_string(),
                idxs.len().to_string(),
            ]
        })
        .collect();
    let mut out = format!(
        "simple evaluation dimensions at {} (p = {})\n",
        ring.group().name(),
        ring.prime()
    );
    out.push_str(&aligned_table(&headers, &rows));
    Ok(out)
}

fn cmd_essential(args: &GroupArgs) -> Result<String> {
    let g = load_group_source(&args.group)?;
    let rep = essential_report(&g, args.prime)?;
    if args.format == Format::Records {
        return Ok(records::render_lines(&[records::essential_value(&rep)]));
    }
    let mut out = format!(
        "essential algebra of {} at p = {}: {}\n",
        g.name(),
        args.prime,
        if rep.nonzero { "nonzero" } else { "zero" }
    );
    if let Some(w) = &rep.witness {
        out.push_str(&format!(
            "  witness {} with n = ord(s) = {}\n  dimension phi(n) * |Out(G)| = {}\n",
            w, rep.n, rep.dimension
        ));
    }
    Ok(out)
}

fn cmd_compose(args: &ComposeArgs) -> Result<String> {
    let h = load_group_source(&args.base.group)?;
    let g = match &args.group2 {
        Some(src) => load_group_source(src)?,
        None => h.clone(),
    };
    let p = args.base.prime;
    let dpairs = enumerate_diagonal_pairs(&h, &g, p)?;
    if args.dpair >= dpairs.len() {
        return Err(Error::SelectorOutOfRange(args.dpair, dpairs.len()));
    }
    let dq = &dpairs[args.dpair];
    // the pair must live in the product's right factor instance
    let g_shared = dq.product().right.clone();
    let g_pairs = enumerate_pairs(&g_shared, p)?;
    if args.pair >= g_pairs.len() {
        return Err(Error::SelectorOutOfRange(args.pair, g_pairs.len()));
    }
    let a = &g_pairs[args.pair];
    let h_shared = dq.product().left.clone();
    let h_ring = TRing::new(&h_shared, p)?;
    let outcome = compose_idempotents(dq, a, &h_ring)?;
    if args.base.format == Format::Records {
        let recs = vec![
            records::dpair_value(args.dpair, dq),
            records::pair_value(args.pair, a),
            records::compose_value(&outcome.support, outcome.element.species()),
        ];
        return Ok(records::render_lines(&recs));
    }
    let mut out = format!(
        "composing F over {} x {} (p = {})\n  dq[{}]: |Q| = {}, t = ({}, {}), |<Qt>| = {}\n  pair[{}]: {} with |<Ps>| = {}\n",
        h.name(),
        g.name(),
        p,
        args.dpair,
        dq.pair().p_subgroup().order(),
        dq.t_left(),
        dq.t_right(),
        dq.pair().span().order(),
        args.pair,
        a,
        a.span().order(),
    );
    match &outcome.support {
        ComposeSupport::Evaluated { j } => {
            out.push_str(&format!("  normal form t = (u, s^{})\n  species over H:\n", j));
            for (i, v) in outcome.element.species().values.iter().enumerate() {
                out.push_str(&format!("    tau[{}] = {}\n", i, v));
            }
        }
        ComposeSupport::SecondProjectionNotFull { order } => {
            out.push_str(&format!(
                "  product = 0 (support: p_2(<Qt>) has order {} < |G|)\n",
                order
            ));
        }
        ComposeSupport::NoNormalForm => {
            out.push_str("  product = 0 (support: no conjugate has second coordinate in <s>)\n");
        }
    }
    Ok(out)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32)> {
    let suite: Suite = args.suite.parse()?;
    let failures = run_suite(suite, args.max_order)?;
    let code = if failures.is_empty() { 0 } else { 1 };
    if args.format == Format::Records {
        let mut recs: Vec<Value> = failures.iter().map(records::failure_value).collect();
        recs.push(records::verify_summary_value(
            &args.suite,
            args.max_order,
            failures.len(),
        ));
        return Ok((records::render_lines(&recs), code));
    }
    let mut out = String::new();
    for f in &failures {
        out.push_str(&format!(
            "FAIL [{}] group {} p={} {}\n  lhs: {}\n  rhs: {}\n",
            f.suite, f.group, f.p, f.context, f.lhs, f.rhs
        ));
    }
    out.push_str(&format!(
        "verify --suite {} --max-order {}: {} ({} failures)\n",
        args.suite,
        args.max_order,
        if failures.is_empty() { "PASS" } else { "FAIL" },
        failures.len()
    ));
    Ok((out, code))
}
