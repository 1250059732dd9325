use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roth_core::config::{parse_set_file, ElementSet, GridSet, Ground, PairSet, SetFile, SetRef};
use roth_core::group::{
    load_cayley_table, make_named_group, max_abelian_subgroup, sylow_subgroup, Elem, FiniteGroup,
    GroupError, GroupSpec, Subgroup,
};

use crate::args::{GroupSource, SetArgs};
use crate::error::{CliError, CliResult};

pub fn load_group(source: &GroupSource) -> CliResult<FiniteGroup> {
    match (&source.group, &source.group_file) {
        (Some(spec), None) => {
            let bad = |e: GroupError| CliError::usage(format!("--group {spec}: {e}"));
            let parsed: GroupSpec = spec.parse().map_err(bad)?;
            make_named_group(&parsed).map_err(bad)
        }
        (None, Some(path)) => {
            if !path.exists() {
                return Err(CliError::usage(format!(
                    "--group-file {}: no such file",
                    path.display()
                )));
            }
            load_cayley_table(path)
                .map_err(|e| CliError::usage(format!("--group-file {}: {e}", path.display())))
        }
        _ => Err(CliError::usage(
            "exactly one of --group and --group-file is required",
        )),
    }
}

/// How `--H` was given. `Auto` is kept distinct because the harmadik
/// pipeline chooses its own subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupChoice {
    Whole,
    Trivial,
    Auto,
    Sylow(usize),
    Generators(Vec<Elem>),
    Elements(Vec<Elem>),
}

fn elem_list(flag: &str, text: &str) -> CliResult<Vec<Elem>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("{flag}: bad element {t:?}")))
        })
        .collect()
}

impl SubgroupChoice {
    pub fn parse(text: &str) -> CliResult<Self> {
        let (head, rest) = text.split_once(':').unwrap_or((text, ""));
        Ok(match (head, rest) {
            ("whole", "") => SubgroupChoice::Whole,
            ("trivial", "") => SubgroupChoice::Trivial,
            ("auto", "") => SubgroupChoice::Auto,
            ("sylow", p) => SubgroupChoice::Sylow(
                p.parse()
                    .map_err(|_| CliError::usage(format!("--H {text}: bad prime")))?,
            ),
            ("gens", list) => SubgroupChoice::Generators(elem_list("--H", list)?),
            ("elements", list) => SubgroupChoice::Elements(elem_list("--H", list)?),
            _ => {
                return Err(CliError::usage(format!(
                    "--H {text}: expected whole, trivial, auto, sylow:p, gens:... or elements:..."
                )))
            }
        })
    }

    pub fn resolve(&self, g: &FiniteGroup) -> CliResult<Subgroup> {
        let in_range = |v: &[Elem]| {
            v.iter().find(|&&x| x >= g.order()).map_or(Ok(()), |x| {
                Err(CliError::usage(format!(
                    "--H: element {x} outside a group of order {}",
                    g.order()
                )))
            })
        };
        Ok(match self {
            SubgroupChoice::Whole => Subgroup::whole(g),
            SubgroupChoice::Trivial => Subgroup::trivial(g),
            SubgroupChoice::Auto => max_abelian_subgroup(g)?,
            SubgroupChoice::Sylow(p) => sylow_subgroup(g, *p)?,
            SubgroupChoice::Generators(v) => {
                in_range(v)?;
                Subgroup::generated_by(g, v)
            }
            SubgroupChoice::Elements(v) => {
                in_range(v)?;
                Subgroup::from_elements(g, v.iter().copied())?
            }
        })
    }
}

/// A set of any shape, as read from `--subset`.
#[derive(Debug, Clone)]
pub enum AnySet {
    Pairs(PairSet),
    Elements(ElementSet),
    Grid(GridSet),
}

impl AnySet {
    pub fn as_ref(&self) -> SetRef<'_> {
        match self {
            AnySet::Pairs(s) => SetRef::Pairs(s),
            AnySet::Elements(s) => SetRef::Elements(s),
            AnySet::Grid(s) => SetRef::Grid(s),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            AnySet::Pairs(s) => s.size(),
            AnySet::Elements(s) => s.size(),
            AnySet::Grid(s) => s.size(),
        }
    }
}

fn shape_name(ground: Ground, dim: usize) -> String {
    match ground {
        Ground::Pairs => "pairset".into(),
        Ground::Elements => "elementset".into(),
        Ground::Grid => format!("gridset {dim}"),
    }
}

/// Builds the set named by `--subset` in the given ground shape.
pub fn load_set(args: &SetArgs, ground: Ground, order: usize) -> CliResult<AnySet> {
    let dim = args.dim;
    let spec = args.subset.as_str();
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match (head, rest) {
        ("full", "") => Ok(match ground {
            Ground::Pairs => AnySet::Pairs(PairSet::full(order)),
            Ground::Elements => AnySet::Elements(ElementSet::full(order)),
            Ground::Grid => AnySet::Grid(GridSet::full(order, dim)?),
        }),
        ("empty", "") => Ok(match ground {
            Ground::Pairs => AnySet::Pairs(PairSet::empty(order)),
            Ground::Elements => AnySet::Elements(ElementSet::empty(order)),
            Ground::Grid => AnySet::Grid(GridSet::empty(order, dim)?),
        }),
        ("random", params) => {
            let bad =
                || CliError::usage(format!("--subset {spec}: expected random:<density>:<seed>"));
            let (d, s) = params.split_once(':').ok_or_else(bad)?;
            let density: f64 = d.parse().map_err(|_| bad())?;
            let seed: u64 = s.parse().map_err(|_| bad())?;
            if !(0.0..=1.0).contains(&density) {
                return Err(CliError::usage(format!(
                    "--subset {spec}: density must lie in [0, 1]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(match ground {
                Ground::Pairs => AnySet::Pairs(PairSet::random(order, density, &mut rng)),
                Ground::Elements => AnySet::Elements(ElementSet::random(order, density, &mut rng)),
                Ground::Grid => AnySet::Grid(GridSet::random(order, dim, density, &mut rng)?),
            })
        }
        ("file", path) => load_set_file(Path::new(path), ground, dim, order),
        _ => Err(CliError::usage(format!(
            "--subset {spec}: expected full, empty, random:<density>:<seed> or file:<path>"
        ))),
    }
}

fn load_set_file(path: &Path, ground: Ground, dim: usize, order: usize) -> CliResult<AnySet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("--subset file:{}: {e}", path.display())))?;
    let parsed = parse_set_file(&text, order)
        .map_err(|e| CliError::usage(format!("--subset file:{}: {e}", path.display())))?;
    let found = match &parsed {
        SetFile::Pairs(_) => shape_name(Ground::Pairs, 0),
        SetFile::Elements(_) => shape_name(Ground::Elements, 0),
        SetFile::Grid(s) => shape_name(Ground::Grid, s.dim()),
    };
    let want = shape_name(ground, dim);
    let set = match parsed {
        SetFile::Pairs(s) if ground == Ground::Pairs => AnySet::Pairs(s),
        SetFile::Elements(s) if ground == Ground::Elements => AnySet::Elements(s),
        SetFile::Grid(s) if ground == Ground::Grid && s.dim() == dim => AnySet::Grid(s),
        // a plane grid and a pair set hold the same points
        SetFile::Pairs(s) if ground == Ground::Grid && dim == 2 => AnySet::Grid(
            GridSet::from_points(order, 2, s.iter().map(|(a, b)| vec![a, b]))?,
        ),
        _ => {
            return Err(CliError::usage(format!(
                "--subset file:{}: holds a {found}, this command needs a {want}",
                path.display()
            )))
        }
    };
    Ok(set)
}
