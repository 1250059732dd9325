use roth_core::config::{
    count_ap3, count_corners, count_elso, count_harmadik, count_ksv, ConfigKind,
};
use roth_core::group::Elem;
use serde::Serialize;

use super::Ctx;
use crate::args::{CountArgs, Format};
use crate::error::{CliError, CliResult};
use crate::inputs::{load_set, AnySet};
use crate::output::{emit, rows_to_csv, Report, SCHEMA_VERSION};

#[derive(Serialize)]
struct CountReport {
    schema_version: u32,
    command: &'static str,
    group: String,
    subgroup: Vec<Elem>,
    kind: ConfigKind,
    set_size: usize,
    count: u64,
}

impl Report for CountReport {
    fn csv(&self) -> CliResult<String> {
        rows_to_csv(&[
            ["group", "kind", "set_size", "count"]
                .map(String::from)
                .to_vec(),
            vec![
                self.group.clone(),
                self.kind.to_string(),
                self.set_size.to_string(),
                self.count.to_string(),
            ],
        ])
    }

    fn text(&self) -> String {
        self.count.to_string()
    }
}

pub fn run(args: &CountArgs, format: Format) -> CliResult<()> {
    let ctx = Ctx::new(&args.instance)?;
    let kind: ConfigKind = args.kind.into();
    let set = load_set(&args.set, kind.ground(), ctx.g.order())?;
    let (g, h, p) = (&ctx.g, &ctx.h, &ctx.policy);
    let count = match (kind, &set) {
        (ConfigKind::Elso, AnySet::Pairs(s)) => count_elso(g, s, h, p),
        (ConfigKind::Harmadik, AnySet::Pairs(s)) => count_harmadik(g, s, p),
        (ConfigKind::Ap3, AnySet::Elements(a)) => count_ap3(g, a, h, p),
        (ConfigKind::Ksv, AnySet::Elements(a)) => count_ksv(g, a),
        (ConfigKind::Corner, AnySet::Grid(s)) => count_corners(g, s, h, p)?,
        _ => {
            return Err(CliError::usage(format!(
                "--kind {kind}: count supports elso, harmadik, ap3, ksv and corner"
            )))
        }
    };
    emit(
        &CountReport {
            schema_version: SCHEMA_VERSION,
            command: "count",
            group: g.name().to_string(),
            subgroup: h.elements().to_vec(),
            kind,
            set_size: set.size(),
            count,
        },
        format,
    )
}
