//! Command-line surface for the tree-algebra library: enumeration,
//! grafting products, coproducts, pairings, morphisms, and the identity
//! suites, all with deterministic text output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use treehopf::error::{Error, Result};
use treehopf::hopf::{
    antipode, ck_coproduct, contraction_coproduct, gl_product_forests, pairing, CkAlgorithm,
    Tensor2,
};
use treehopf::linalg::{LinComb, Rat};
use treehopf::morphisms::{phi_forest, psi_star, RestrictedAlphabet, TypeMatrix};
use treehopf::prelie::{graft_at, nap_tree, prelie_tree_product, prelie_tree_product_lambda};
use treehopf::series::{forest_series, restricted_tree_series, tree_series};
use treehopf::text::{
    parse_forest, parse_labeled_tree, parse_lambda, parse_rat, parse_tree, render_forest,
    render_labeled_tree, render_lincomb, render_rat, render_tree,
};
use treehopf::trees::{
    generate_forests, generate_restricted_trees, generate_trees, parse_addr, Alphabets,
    DecorationAlphabet, Forest, TypeId,
};
use treehopf::verify::run_suites;

#[derive(Parser)]
#[command(
    name = "treehopf",
    version,
    about = "Exact algebra of typed decorated rooted trees",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count trees or forests per vertex count, from the counting series.
    Count(CountArgs),
    /// List trees or forests of one size in canonical order.
    Enumerate(EnumerateArgs),
    /// Graft a tree below one chosen vertex of a host tree.
    Graft(GraftArgs),
    /// Grafting (pre-Lie) product of two trees.
    Prelie(PrelieArgs),
    /// Branch coproduct: detach one root branch of the given type.
    Nap(NapArgs),
    /// Associative product of forests extending the grafting products.
    Star(StarArgs),
    /// Cut coproduct of a forest.
    Ck(CkArgs),
    /// Antipode of a forest for the cut coproduct.
    Antipode(AntipodeArgs),
    /// Contraction coproduct of a forest (semigroup decorations).
    Delta(DeltaArgs),
    /// Symmetry pairing of two forests.
    Pair(PairArgs),
    /// Retype a forest along a rational matrix on edge types.
    Phi(PhiArgs),
    /// Dual freeness morphism into block-decorated forests.
    PsiStar(PsiStarArgs),
    /// Operadic partial composition of labeled trees.
    Compose(ComposeArgs),
    /// Run identity suites and print PASS/FAIL per check.
    Verify(VerifyArgs),
}

/// Alphabet selection shared by the algebraic subcommands.
#[derive(Args, Clone)]
struct AlphabetOpts {
    /// Comma-separated decoration names.
    #[arg(long, default_value = "a,b,c,d", value_name = "NAMES")]
    decorations: String,
    /// Comma-separated edge-type names.
    #[arg(long, default_value = "red,green", value_name = "NAMES")]
    types: String,
    /// Semigroup table for the decorations: rows separated by `;`, entries
    /// by `,`; entry (i,j) is the index of decoration i plus decoration j.
    #[arg(long, value_name = "TABLE")]
    semigroup: Option<String>,
}

impl AlphabetOpts {
    fn names(src: &str) -> Vec<&str> {
        src.split(',').collect()
    }

    fn build(&self) -> Result<Alphabets> {
        let decs = Self::names(&self.decorations);
        let types = Self::names(&self.types);
        match &self.semigroup {
            None => Alphabets::from_names(&decs, &types),
            Some(table) => {
                let rows: Vec<Vec<u32>> = table
                    .split(';')
                    .map(|row| {
                        row.split(',')
                            .map(|x| {
                                x.trim().parse::<u32>().map_err(|_| {
                                    Error::constraint(format!(
                                        "semigroup entry `{x}` is not an index"
                                    ))
                                })
                            })
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                let dec = DecorationAlphabet::with_semigroup(
                    decs.iter().map(|s| s.to_string()).collect(),
                    rows,
                )?;
                let ty = treehopf::trees::TypeAlphabet::new(
                    types.iter().map(|s| s.to_string()).collect(),
                )?;
                Ok(Alphabets::new(dec, ty))
            }
        }
    }

    /// Like [`build`], but a single decoration without an explicit table
    /// gets the trivial semigroup, so `delta` works out of the box.
    fn build_with_default_semigroup(&self) -> Result<Alphabets> {
        let a = self.build()?;
        if !a.decorations.has_semigroup() && a.d() == 1 {
            let name = a.decorations.name(treehopf::trees::DecId(0))?.to_string();
            let dec = DecorationAlphabet::with_semigroup(vec![name], vec![vec![0]])?;
            return Ok(Alphabets::new(dec, a.types));
        }
        Ok(a)
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["trees", "forests", "restricted"])))]
struct CountArgs {
    /// Count trees by vertex count.
    #[arg(long)]
    trees: bool,
    /// Count forests by total vertex count (starting at the empty forest).
    #[arg(long)]
    forests: bool,
    /// Count trees whose root has no edge of the distinguished type.
    #[arg(long)]
    restricted: bool,
    /// Number of decorations.
    #[arg(short = 'D', long, default_value_t = 1, value_name = "D")]
    decoration_count: u64,
    /// Number of edge types.
    #[arg(short = 'T', long, default_value_t = 2, value_name = "T")]
    type_count: u64,
    /// Largest vertex count reported.
    #[arg(short = 'n', long, value_name = "N")]
    max: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["trees", "forests", "restricted"])))]
struct EnumerateArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// List trees.
    #[arg(long)]
    trees: bool,
    /// List forests.
    #[arg(long)]
    forests: bool,
    /// List trees whose root avoids --root-type.
    #[arg(long)]
    restricted: bool,
    /// Use only the first D decoration names.
    #[arg(short = 'D', long, value_name = "D")]
    decoration_count: Option<usize>,
    /// Use only the first T type names.
    #[arg(short = 'T', long, value_name = "T")]
    type_count: Option<usize>,
    /// Vertex count of the listed objects.
    #[arg(short = 'n', long, value_name = "N")]
    size: usize,
    /// Root-avoided type for --restricted (default: the first type).
    #[arg(long, value_name = "TYPE")]
    root_type: Option<String>,
}

#[derive(Args)]
struct GraftArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Vertex address in the host: `/` is the root, `/0/1` walks child paths.
    #[arg(long, default_value = "/", value_name = "ADDR")]
    at: String,
    /// Type of the new edge.
    #[arg(long = "type", value_name = "TYPE")]
    edge_type: String,
    /// Host tree literal.
    host: String,
    /// Tree grafted below the chosen vertex.
    graft: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("weighting").required(true).args(["edge_type", "lambda"])))]
struct PrelieArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Graft over one edge type.
    #[arg(long = "type", value_name = "TYPE")]
    edge_type: Option<String>,
    /// Graft over all edge types with these weights.
    #[arg(long, value_name = "WEIGHTS")]
    lambda: Option<String>,
    /// Left tree literal (grafting host).
    x: String,
    /// Right tree literal (grafted below some vertex of the host).
    y: String,
}

#[derive(Args)]
struct NapArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Type of the detached root branch.
    #[arg(long = "type", value_name = "TYPE")]
    edge_type: String,
    /// Tree literal.
    tree: String,
}

#[derive(Args)]
struct StarArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Edge-type weights, `type=rational` pairs; omitted types weigh 0.
    #[arg(long, default_value = "", value_name = "WEIGHTS")]
    lambda: String,
    /// Left forest literal.
    x: String,
    /// Right forest literal.
    y: String,
}

#[derive(Copy, Clone, ValueEnum)]
enum Route {
    /// Enumerate admissible cuts.
    Cuts,
    /// Recurse through the root.
    Recursive,
}

#[derive(Args)]
struct CkArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Edge-type weights, `type=rational` pairs; omitted types weigh 0.
    #[arg(long, default_value = "", value_name = "WEIGHTS")]
    lambda: String,
    /// Which of the two equivalent computations to run.
    #[arg(long, value_enum, default_value_t = Route::Cuts)]
    route: Route,
    /// Forest literal.
    forest: String,
}

#[derive(Args)]
struct AntipodeArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Edge-type weights, `type=rational` pairs; omitted types weigh 0.
    #[arg(long, default_value = "", value_name = "WEIGHTS")]
    lambda: String,
    /// Forest literal.
    forest: String,
}

#[derive(Args)]
struct DeltaArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Forest literal.
    forest: String,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Left forest literal.
    x: String,
    /// Right forest literal.
    y: String,
}

#[derive(Args)]
struct PhiArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// File holding a square rational matrix on edge types: one row per
    /// line, entries whitespace-separated, `#` starts a comment line.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
    /// Forest literal.
    forest: String,
}

#[derive(Args)]
struct PsiStarArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Edge-type weights, `type=rational` pairs; omitted types weigh 0.
    #[arg(long, default_value = "", value_name = "WEIGHTS")]
    lambda: String,
    /// Type whose root-incident edges block trees avoid (default: first type).
    #[arg(long, value_name = "TYPE")]
    root_type: Option<String>,
    /// Largest block weight given a name (default: the input size).
    #[arg(long, value_name = "N")]
    max_weight: Option<usize>,
    /// Forest literal.
    forest: String,
}

#[derive(Args)]
struct ComposeArgs {
    #[command(flatten)]
    alphabet: AlphabetOpts,
    /// Slot of the left tree that the right tree replaces.
    #[arg(long, value_name = "LABEL")]
    at: u32,
    /// Left labeled tree, labels 1..=m.
    t: String,
    /// Right labeled tree, labels 1..=n.
    s: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// prelie | hopf | duality | operad | morphisms | cointeraction | all.
    #[arg(long, default_value = "all", value_name = "SUITE")]
    suite: String,
    /// Size bound; each suite has its own default.
    #[arg(long, value_name = "N")]
    max_size: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Count(a) => count(a)?,
        Cmd::Enumerate(a) => enumerate(a)?,
        Cmd::Graft(a) => graft(a)?,
        Cmd::Prelie(a) => prelie(a)?,
        Cmd::Nap(a) => nap(a)?,
        Cmd::Star(a) => star(a)?,
        Cmd::Ck(a) => ck(a)?,
        Cmd::Antipode(a) => antipode_cmd(a)?,
        Cmd::Delta(a) => delta(a)?,
        Cmd::Pair(a) => pair(a)?,
        Cmd::Phi(a) => phi_cmd(a)?,
        Cmd::PsiStar(a) => psi_star_cmd(a)?,
        Cmd::Compose(a) => compose(a)?,
        Cmd::Verify(a) => return verify(a),
    }
    Ok(ExitCode::SUCCESS)
}

fn count(a: CountArgs) -> Result<()> {
    let (d, t, n) = (a.decoration_count, a.type_count, a.max);
    if a.trees {
        let s = tree_series(d, t, n);
        for k in 1..=n {
            println!("{k} {}", s.coeff(k));
        }
    } else if a.restricted {
        if t == 0 {
            return Err(Error::constraint("need at least one edge type"));
        }
        let s = restricted_tree_series(d, t, n);
        for k in 1..=n {
            println!("{k} {}", s.coeff(k));
        }
    } else {
        let s = forest_series(&tree_series(d, t, n), n);
        for k in 0..=n {
            println!("{k} {}", s.coeff(k));
        }
    }
    Ok(())
}

fn enumerate(args: EnumerateArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let d = args.decoration_count.unwrap_or_else(|| a.d());
    let t = args.type_count.unwrap_or_else(|| a.t());
    if d > a.d() {
        return Err(Error::constraint(format!(
            "only {} decoration names available; pass more via --decorations",
            a.d()
        )));
    }
    if t > a.t() {
        return Err(Error::constraint(format!(
            "only {} type names available; pass more via --types",
            a.t()
        )));
    }
    if args.trees {
        let mut items = generate_trees(d, t, args.size);
        items.sort();
        for x in items {
            println!("{}", render_tree(&x, &a)?);
        }
    } else if args.restricted {
        let t0 = match &args.root_type {
            Some(name) => a.types.id(name)?,
            None => TypeId(0),
        };
        if t0.0 as usize >= t {
            return Err(Error::TypeRange(t0.0));
        }
        let mut items = generate_restricted_trees(d, t, t0, args.size);
        items.sort();
        for x in items {
            println!("{}", render_tree(&x, &a)?);
        }
    } else {
        let mut items = generate_forests(d, t, args.size);
        items.sort();
        for x in items {
            println!("{}", render_forest(&x, &a)?);
        }
    }
    Ok(())
}

fn graft(args: GraftArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let host = parse_tree(&args.host, &a)?;
    let sub = parse_tree(&args.graft, &a)?;
    let addr = parse_addr(&args.at)?;
    let ty = a.types.id(&args.edge_type)?;
    let out = graft_at(&host, &addr, &sub, ty)?;
    println!("{}", render_tree(&out, &a)?);
    Ok(())
}

fn prelie(args: PrelieArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let x = parse_tree(&args.x, &a)?;
    let y = parse_tree(&args.y, &a)?;
    let out = match (&args.edge_type, &args.lambda) {
        (Some(name), _) => prelie_tree_product(&x, a.types.id(name)?, &y),
        (None, Some(weights)) => {
            let l = parse_lambda(weights, &a.types)?;
            prelie_tree_product_lambda(&x, &l, &y)
        }
        (None, None) => unreachable!("clap requires one of --type/--lambda"),
    };
    println!("{}", render_lincomb(&out, |t| render_tree(t, &a))?);
    Ok(())
}

fn nap(args: NapArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let x = parse_tree(&args.tree, &a)?;
    let ty = a.types.id(&args.edge_type)?;
    let out = nap_tree(&x, ty);
    let line = render_lincomb(&out, |(rest, (branch, bty))| {
        Ok(format!(
            "{} | {}:{}",
            render_tree(rest, &a)?,
            a.types.name(*bty)?,
            render_tree(branch, &a)?
        ))
    })?;
    println!("{line}");
    Ok(())
}

fn star(args: StarArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let x = parse_forest(&args.x, &a)?;
    let y = parse_forest(&args.y, &a)?;
    let l = parse_lambda(&args.lambda, &a.types)?;
    let out = gl_product_forests(&x, &y, &l);
    println!("{}", render_lincomb(&out, |f| render_forest(f, &a))?);
    Ok(())
}

fn render_tensor2(
    out: &LinComb<Tensor2<Forest>>,
    a: &Alphabets,
) -> Result<String> {
    render_lincomb(out, |t| {
        Ok(format!(
            "{} | {}",
            render_forest(&t.left, a)?,
            render_forest(&t.right, a)?
        ))
    })
}

fn ck(args: CkArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let f = parse_forest(&args.forest, &a)?;
    let l = parse_lambda(&args.lambda, &a.types)?;
    let alg = match args.route {
        Route::Cuts => CkAlgorithm::Cuts,
        Route::Recursive => CkAlgorithm::Recursive,
    };
    let out = ck_coproduct(&f, &l, alg);
    println!("{}", render_tensor2(&out, &a)?);
    Ok(())
}

fn antipode_cmd(args: AntipodeArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let f = parse_forest(&args.forest, &a)?;
    let l = parse_lambda(&args.lambda, &a.types)?;
    let out = antipode(&LinComb::single(f), &l);
    println!("{}", render_lincomb(&out, |g| render_forest(g, &a))?);
    Ok(())
}

fn delta(args: DeltaArgs) -> Result<()> {
    let a = args.alphabet.build_with_default_semigroup()?;
    let f = parse_forest(&args.forest, &a)?;
    let out = contraction_coproduct(&f, &a.decorations)?;
    println!("{}", render_tensor2(&out, &a)?);
    Ok(())
}

fn pair(args: PairArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let x = parse_forest(&args.x, &a)?;
    let y = parse_forest(&args.y, &a)?;
    let p = pairing(&LinComb::single(x), &LinComb::single(y));
    println!("{}", render_rat(&p));
    Ok(())
}

fn phi_cmd(args: PhiArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let f = parse_forest(&args.forest, &a)?;
    let src = std::fs::read_to_string(&args.matrix).map_err(|e| {
        Error::constraint(format!("cannot read {}: {e}", args.matrix.display()))
    })?;
    let mut rows = Vec::new();
    for line in src.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<Rat> = line
            .split_whitespace()
            .map(parse_rat)
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.len() != a.t() {
        return Err(Error::MatrixShape {
            expected: a.t(),
            found: rows.len(),
        });
    }
    let m = TypeMatrix::new(rows)?;
    let out = phi_forest(&f, &m)?;
    println!("{}", render_lincomb(&out, |g| render_forest(g, &a))?);
    Ok(())
}

fn psi_star_cmd(args: PsiStarArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let f = parse_forest(&args.forest, &a)?;
    let l = parse_lambda(&args.lambda, &a.types)?;
    let t0 = match &args.root_type {
        Some(name) => a.types.id(name)?,
        None => TypeId(0),
    };
    let w = args.max_weight.unwrap_or_else(|| f.size().max(1));
    let ra = RestrictedAlphabet::new(a.d(), a.t(), t0, w)?;
    let out = psi_star(&f, &l, &ra)?;
    // Decorations of the image are block names b1, b2, …; a legend ties
    // each used name to the block tree it stands for.
    let block_names: Vec<String> = (1..=ra.len()).map(|i| format!("b{i}")).collect();
    let refs: Vec<&str> = block_names.iter().map(String::as_str).collect();
    let type_names: Vec<&str> = (0..a.t())
        .map(|i| a.types.name(TypeId(i as u32)))
        .collect::<Result<_>>()?;
    let blocks = Alphabets::from_names(&refs, &type_names)?;
    println!("{}", render_lincomb(&out, |g| render_forest(g, &blocks))?);
    let mut used = std::collections::BTreeSet::new();
    for (g, _) in out.iter() {
        for tree in g.trees() {
            collect_decorations(tree, &mut used);
        }
    }
    for d in used {
        println!(
            "# b{} = {}",
            d.0 + 1,
            render_tree(ra.tree(d)?, &a)?
        );
    }
    Ok(())
}

fn collect_decorations(
    t: &treehopf::trees::Tree,
    out: &mut std::collections::BTreeSet<treehopf::trees::DecId>,
) {
    out.insert(t.dec());
    for (_, c) in t.children() {
        collect_decorations(c, out);
    }
}

fn compose(args: ComposeArgs) -> Result<()> {
    let a = args.alphabet.build()?;
    let t = parse_labeled_tree(&args.t, &a.types)?;
    let s = parse_labeled_tree(&args.s, &a.types)?;
    let out = treehopf::operad::compose_standard(&t, args.at, &s)?;
    println!(
        "{}",
        render_lincomb(&out, |lt| render_labeled_tree(lt, &a.types))?
    );
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let reports = run_suites(&args.suite, args.max_size)?;
    let mut all_passed = true;
    for r in &reports {
        for line in r.render_lines() {
            println!("{line}");
        }
        all_passed &= r.passed();
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
