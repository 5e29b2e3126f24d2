use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use twocat::document::{
    parse_document, print_category, print_functor, print_value, CategoryDocument, CategoryRef, Document,
    FunctorDocument,
};
use twocat::gallery::{by_name, GalleryItem};
use twocat::{
    classify, covering_oracle, edm_cover, find_isomorphism, is_covering, is_trivial_covering,
    monotone_light_factor, pullback, reflect, reflective_factor, trivial_covering_oracle, validate,
    verify_factorization, Error, SearchCap, TwoCategory, TwoFunctor, TwoPrecategory,
};

#[derive(Parser)]
#[command(name = "twocat", version, about = "Finite 2-categories on the command line")]
struct Cli {
    /// Search caps as OBJECTS,ONE_CELLS,TWO_CELLS
    #[arg(long, global = true, value_name = "O,A,T")]
    cap: Option<Cap>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the 2-category laws (or the functor laws)
    Validate { file: String },
    /// Reflect into 2-preorders; the fiber table goes to stderr
    Reflect { file: String },
    /// Classify a 2-functor
    Classify {
        file: String,
        /// Also run the brute-force oracles and report agreement
        #[arg(long)]
        oracle: bool,
    },
    /// Factor a 2-functor
    Factor {
        #[arg(long, value_enum)]
        system: System,
        file: String,
    },
    /// Pullback of two 2-functors with a common target
    Pullback { f: String, g: String },
    /// The effective descent cover; summand counts go to stderr
    EdmCover { file: String },
    /// Print a named gallery object
    Gallery { name: String },
    /// Search for an isomorphism
    Iso { a: String, b: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Reflective,
    MonotoneLight,
}

#[derive(Clone, Copy)]
struct Cap(SearchCap);

impl FromStr for Cap {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [objects, one_cells, two_cells] => Ok(Cap(SearchCap {
                objects,
                one_cells,
                two_cells,
            })),
            _ => Err("expected three comma-separated sizes".into()),
        }
    }
}

/// Process exit status with a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

const CHECK_FAILED: u8 = 1;
const MALFORMED: u8 = 2;
const OVER_CAP: u8 = 3;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::AxiomsViolated(_) => CHECK_FAILED,
            Error::SearchCapExceeded(_) | Error::BudgetExceeded(_) => OVER_CAP,
            _ => MALFORMED,
        };
        let message = match &e {
            Error::AxiomsViolated(report) => format!("not a 2-category\n{report}"),
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure {
        code: MALFORMED,
        message: message.into(),
    }
}

fn check_failed(message: impl Into<String>) -> Failure {
    Failure {
        code: CHECK_FAILED,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| malformed(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| malformed(format!("{path}: {e}")))
    }
}

fn base_dir(path: &str) -> PathBuf {
    match Path::new(path).parent() {
        Some(p) if path != "-" => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn load_document(path: &str) -> Result<Document, Failure> {
    Ok(parse_document(&read_source(path)?)?)
}

fn expect_category(doc: Document, path: &str) -> Result<CategoryDocument, Failure> {
    match doc {
        Document::Category(c) => Ok(c),
        Document::Functor(_) => Err(malformed(format!("{path}: expected a 2-category document"))),
    }
}

fn expect_functor(doc: Document, path: &str) -> Result<FunctorDocument, Failure> {
    match doc {
        Document::Functor(f) => Ok(f),
        Document::Category(_) => Err(malformed(format!("{path}: expected a 2-functor document"))),
    }
}

fn load_category(path: &str) -> Result<TwoCategory, Failure> {
    let doc = expect_category(load_document(path)?, path)?;
    Ok(TwoCategory::new(doc.build()?)?)
}

/// A gallery name, or a file relative to the referring document.
fn resolve_precategory(r: &CategoryRef, dir: &Path) -> Result<TwoPrecategory, Failure> {
    match r {
        CategoryRef::Inline(doc) => Ok(doc.build()?),
        CategoryRef::Named(name) => match by_name(name) {
            Some(GalleryItem::Category(c)) => Ok(c.precategory().clone()),
            Some(GalleryItem::Relaxed(c)) => Ok((*c).clone()),
            None => {
                let path = dir.join(name);
                let path = path.to_string_lossy();
                let doc = expect_category(load_document(&path)?, &path)?;
                Ok(doc.build()?)
            }
        },
    }
}

fn functor_from_document(doc: &FunctorDocument, dir: &Path) -> Result<TwoFunctor, Failure> {
    let source = TwoCategory::new(resolve_precategory(&doc.source, dir)?)?;
    let target = TwoCategory::new(resolve_precategory(&doc.target, dir)?)?;
    let [f0, f1, f2] = doc.maps();
    let f = TwoFunctor::from_id_maps(source, target, &f0, &f1, &f2)?;
    let violations = f.violations();
    if violations.is_empty() {
        Ok(f)
    } else {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(check_failed(format!("not a 2-functor\n{}", lines.join("\n"))))
    }
}

fn load_functor(path: &str) -> Result<TwoFunctor, Failure> {
    let doc = expect_functor(load_document(path)?, path)?;
    functor_from_document(&doc, &base_dir(path))
}

fn functor_value(f: &TwoFunctor) -> serde_json::Value {
    serde_json::to_value(FunctorDocument::from_morphism(f)).expect("documents serialize")
}

fn category_value(c: &TwoCategory) -> serde_json::Value {
    serde_json::to_value(CategoryDocument::from_precategory(c)).expect("documents serialize")
}

fn cmd_validate(path: &str) -> Outcome {
    match load_document(path)? {
        Document::Category(doc) => {
            let report = validate(&doc.build()?);
            print!("{report}");
            if report.all_pass() {
                Ok(())
            } else {
                Err(check_failed(format!("failed: {}", names(&report.failed_laws()))))
            }
        }
        Document::Functor(doc) => {
            functor_from_document(&doc, &base_dir(path))?;
            println!("2-functor: pass");
            Ok(())
        }
    }
}

fn names<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_reflect(path: &str) -> Outcome {
    let a = load_category(path)?;
    let r = reflect(&a);
    print!("{}", print_category(&r.reflected));
    for t in r.reflected.two_cells() {
        let members: Vec<&str> = r.fibers[t.0].iter().map(|&s| a.two_id(s)).collect();
        eprintln!("{}: {}", r.reflected.two_id(t), members.join(", "));
    }
    Ok(())
}

fn cmd_classify(path: &str, oracle: bool) -> Outcome {
    let f = load_functor(path)?;
    print!("{}", classify(&f));
    if !oracle {
        return Ok(());
    }
    let pairs = [
        ("trivial_covering", is_trivial_covering(&f), trivial_covering_oracle(&f)),
        ("covering", is_covering(&f), covering_oracle(&f)),
    ];
    let mut agree = true;
    for (name, fast, slow) in pairs {
        let verdict = if fast == slow { "agrees" } else { "DISAGREES" };
        println!("{name} oracle: {slow} ({verdict})");
        agree &= fast == slow;
    }
    if agree {
        Ok(())
    } else {
        Err(check_failed("an oracle disagrees with its characterization"))
    }
}

fn cmd_factor(path: &str, system: System) -> Outcome {
    let f = load_functor(path)?;
    let fac = match system {
        System::Reflective => reflective_factor(&f),
        System::MonotoneLight => monotone_light_factor(&f),
    };
    let problems = verify_factorization(&f, &fac);
    let out = json!({
        "system": fac.system.name(),
        "e": functor_value(&fac.e),
        "m": functor_value(&fac.m),
        "middle": category_value(&fac.middle),
        "certificates": {
            "e": fac.e_certificate.to_string().lines().collect::<Vec<_>>(),
            "m": fac.m_certificate.to_string().lines().collect::<Vec<_>>(),
        },
        "problems": problems,
    });
    print!("{}", print_value(&out));
    if problems.is_empty() {
        Ok(())
    } else {
        Err(check_failed(problems.join("\n")))
    }
}

fn cmd_pullback(f: &str, g: &str) -> Outcome {
    let (f, g) = (load_functor(f)?, load_functor(g)?);
    let p = pullback(&f, &g)?;
    let out = json!({
        "apex": category_value(&p.apex),
        "proj1": functor_value(&p.proj1),
        "proj2": functor_value(&p.proj2),
    });
    print!("{}", print_value(&out));
    Ok(())
}

fn cmd_edm_cover(path: &str) -> Outcome {
    let b = load_category(path)?;
    let cover = edm_cover(&b);
    print!("{}", print_functor(&cover.p));
    eprintln!("|I| = {}, |J| = {}", cover.vertical.len(), cover.horizontal.len());
    Ok(())
}

fn cmd_gallery(name: &str) -> Outcome {
    match by_name(name) {
        Some(GalleryItem::Category(c)) => print!("{}", print_category(&c)),
        Some(GalleryItem::Relaxed(c)) => print!("{}", print_category(&c)),
        None => return Err(malformed(format!("unknown gallery object {name:?}"))),
    }
    Ok(())
}

fn cmd_iso(a: &str, b: &str, cap: SearchCap) -> Outcome {
    let (a, b) = (load_category(a)?, load_category(b)?);
    match find_isomorphism(&a, &b, cap)? {
        Some(w) => {
            print!("{}", print_functor(&w));
            Ok(())
        }
        None => Err(check_failed("not isomorphic")),
    }
}

fn run(cli: Cli) -> Outcome {
    let cap = cli.cap.map_or_else(SearchCap::default, |c| c.0);
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Reflect { file } => cmd_reflect(file),
        Command::Classify { file, oracle } => cmd_classify(file, *oracle),
        Command::Factor { system, file } => cmd_factor(file, *system),
        Command::Pullback { f, g } => cmd_pullback(f, g),
        Command::EdmCover { file } => cmd_edm_cover(file),
        Command::Gallery { name } => cmd_gallery(name),
        Command::Iso { a, b } => cmd_iso(a, b, cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { MALFORMED } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
