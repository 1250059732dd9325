use roth_core::group::{
    all_subgroups, group_facts, max_abelian_subgroup, sylow_subgroup, Elem, FiniteGroup, Subgroup,
    DEFAULT_SUBGROUP_CAP,
};
use serde::Serialize;

use crate::args::{Format, GroupCommand};
use crate::error::CliResult;
use crate::inputs::load_group;
use crate::output::{emit, join, rows_to_csv, Report, SCHEMA_VERSION};

#[derive(Serialize)]
struct SylowOrder {
    p: usize,
    order: usize,
}

#[derive(Serialize)]
struct GroupInfo {
    schema_version: u32,
    command: &'static str,
    group: String,
    order: usize,
    is_abelian: bool,
    p_group: Option<usize>,
    exponent: usize,
    center_size: usize,
    element_orders: Vec<usize>,
    sylow: Vec<SylowOrder>,
    /// Absent above the subgroup enumeration cap.
    subgroup_count: Option<usize>,
    max_abelian_order: Option<usize>,
}

impl Report for GroupInfo {
    fn csv(&self) -> CliResult<String> {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        rows_to_csv(&[
            [
                "group",
                "order",
                "is_abelian",
                "p_group",
                "exponent",
                "center_size",
                "subgroup_count",
                "max_abelian_order",
            ]
            .map(String::from)
            .to_vec(),
            vec![
                self.group.clone(),
                self.order.to_string(),
                self.is_abelian.to_string(),
                opt(self.p_group),
                self.exponent.to_string(),
                self.center_size.to_string(),
                opt(self.subgroup_count),
                opt(self.max_abelian_order),
            ],
        ])
    }

    fn text(&self) -> String {
        let mut out = format!(
            "{} of order {}, {}\nexponent {}, center of order {}\n",
            self.group,
            self.order,
            if self.is_abelian {
                "abelian"
            } else {
                "non-abelian"
            },
            self.exponent,
            self.center_size
        );
        for s in &self.sylow {
            out += &format!("Sylow {}-subgroup of order {}\n", s.p, s.order);
        }
        if let (Some(c), Some(a)) = (self.subgroup_count, self.max_abelian_order) {
            out += &format!("{c} subgroups, largest abelian of order {a}\n");
        }
        out
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

fn info(g: &FiniteGroup) -> CliResult<GroupInfo> {
    let f = group_facts(g);
    let small = g.order() <= DEFAULT_SUBGROUP_CAP;
    let sylow = if small {
        prime_factors(g.order())
            .into_iter()
            .map(|p| {
                Ok(SylowOrder {
                    p,
                    order: sylow_subgroup(g, p)?.order(),
                })
            })
            .collect::<CliResult<_>>()?
    } else {
        Vec::new()
    };
    Ok(GroupInfo {
        schema_version: SCHEMA_VERSION,
        command: "group info",
        group: f.name,
        order: f.order,
        is_abelian: f.is_abelian,
        p_group: f.p_group,
        exponent: f.exponent,
        center_size: f.center_size,
        element_orders: f.element_orders,
        sylow,
        subgroup_count: if small {
            Some(all_subgroups(g)?.len())
        } else {
            None
        },
        max_abelian_order: if small {
            Some(max_abelian_subgroup(g)?.order())
        } else {
            None
        },
    })
}

#[derive(Serialize)]
struct SubgroupEntry {
    order: usize,
    index: usize,
    abelian: bool,
    normal: bool,
    elements: Vec<Elem>,
}

#[derive(Serialize)]
struct SubgroupList {
    schema_version: u32,
    command: &'static str,
    group: String,
    subgroups: Vec<SubgroupEntry>,
}

impl Report for SubgroupList {
    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![["order", "index", "abelian", "normal", "elements"]
            .map(String::from)
            .to_vec()];
        rows.extend(self.subgroups.iter().map(|s| {
            vec![
                s.order.to_string(),
                s.index.to_string(),
                s.abelian.to_string(),
                s.normal.to_string(),
                join(&s.elements, " "),
            ]
        }));
        rows_to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut out = format!("{} has {} subgroups\n", self.group, self.subgroups.len());
        for s in &self.subgroups {
            out += &format!(
                "order {:>3}{}{} {{{}}}\n",
                s.order,
                if s.abelian { " abelian" } else { "" },
                if s.normal { " normal" } else { "" },
                join(&s.elements, ",")
            );
        }
        out
    }
}

fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.elements().all(|x| {
        h.elements()
            .iter()
            .all(|&y| h.contains(g.right_div(g.mul(x, y), x)))
    })
}

pub fn run(cmd: &GroupCommand, format: Format) -> CliResult<()> {
    match cmd {
        GroupCommand::Info(source) => emit(&info(&load_group(source)?)?, format),
        GroupCommand::Subgroups(source) => {
            let g = load_group(source)?;
            let subgroups = all_subgroups(&g)?
                .into_iter()
                .map(|h| SubgroupEntry {
                    order: h.order(),
                    index: h.index(),
                    abelian: h.is_abelian(&g),
                    normal: is_normal(&g, &h),
                    elements: h.elements().to_vec(),
                })
                .collect();
            emit(
                &SubgroupList {
                    schema_version: SCHEMA_VERSION,
                    command: "group subgroups",
                    group: g.name().to_string(),
                    subgroups,
                },
                format,
            )
        }
    }
}
