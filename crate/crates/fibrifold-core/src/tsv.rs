// Line splitting shared by the embedded resources.

use alloc::vec::Vec;

/// Non-comment, non-empty lines with their 1-based line numbers, split on tabs.
pub(crate) fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').collect()))
}

/// First line of a resource, `#name<TAB>version`.
pub(crate) fn version(text: &str) -> Option<(&str, &str)> {
    let first = text.lines().next()?;
    let mut it = first.strip_prefix('#')?.split('\t');
    Some((it.next()?, it.next()?))
}
