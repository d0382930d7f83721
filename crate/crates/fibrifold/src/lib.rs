//! Command line front end for `fibrifold-core`: parallel catalog assembly,
//! JSON and TSV output, and the acceptance checks.

pub mod checks;
pub mod json;

use anyhow::{anyhow, Context, Result};
use fibrifold_core::atlas::{assemble, realize_item, table, work_items, Catalog, Which};
use fibrifold_core::basegroups::{all, BasePresentation};
use fibrifold_core::exactnum::{FiberKernel, GridOp};
use fibrifold_core::fibration::classify;
use fibrifold_core::irreducible::{find, realize_irreducible};
use fibrifold_core::notation::parse;
use fibrifold_core::realization::{realize_fibered, SpaceGroup};
use rayon::prelude::*;

/// Build the catalog, realizing the names in parallel. The result does not
/// depend on the number of workers.
pub fn build_catalog() -> Result<Catalog> {
    let items = work_items()?;
    let realized = items.par_iter().map(realize_item).collect::<fibrifold_core::Result<Vec<_>>>()?;
    Ok(assemble(realized)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
    Text,
}

pub fn emit_table(catalog: &Catalog, which: Which, format: Format) -> Result<String> {
    let t = table(catalog, which)?;
    Ok(match format {
        Format::Tsv => t.to_tsv(),
        Format::Text => t.to_text(),
        Format::Json => serde_json::to_string_pretty(&json::table(&t))? + "\n",
    })
}

/// A named group located in the data.
pub enum Located {
    Fibered { base: Box<BasePresentation>, kernel: FiberKernel, ops: Vec<GridOp>, name: String },
    Irreducible { name: String },
}

impl Located {
    pub fn name(&self) -> &str {
        match self {
            Located::Fibered { name, .. } | Located::Irreducible { name } => name,
        }
    }

    pub fn realize(&self) -> Result<SpaceGroup> {
        Ok(match self {
            Located::Fibered { base, kernel, ops, .. } => realize_fibered(base, ops, *kernel)?,
            Located::Irreducible { name } => realize_irreducible(name)?,
        })
    }
}

/// Find a fibered name (any of its spellings) or an irreducible name.
pub fn locate(name: &str) -> Result<Located> {
    if let Ok(c) = find(name) {
        return Ok(Located::Irreducible { name: c.name });
    }
    let parsed = parse(name).with_context(|| format!("`{name}` is neither an irreducible nor a fibered name"))?;
    let base_symbol = parsed.base_symbol();
    let kernel = if parsed.is_interval() { FiberKernel::Interval } else { FiberKernel::Circular };
    // The base named by the symbol first, then the others.
    let mut bases = all();
    bases.sort_by_key(|b| b.id != base_symbol);
    for base in bases {
        for c in classify(&base, kernel)?.classes {
            if c.name == parsed || c.spellings.contains(&parsed) || c.full_names.contains(&parsed) {
                let (ops, name) = (c.representative.clone(), c.name.render());
                return Ok(Located::Fibered { base: Box::new(base), kernel, ops, name });
            }
        }
    }
    Err(anyhow!("no fibration over {base_symbol} is called `{name}`"))
}
