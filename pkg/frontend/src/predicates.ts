/**
 * The 42 candidate predicates a wug guess may name, as the server knows
 * them, plus display labels for the searchable picker.
 */

export interface PredicateOption {
  name: string; // server-side id, e.g. "divisible_6"
  label: string; // human wording, e.g. "divisible by 6"
}

function option(name: string): PredicateOption {
  const [kind, n] = name.split("_");
  if (kind === "divisible") return { name, label: `divisible by ${n}` };
  if (kind === "greater") return { name, label: `greater than ${n}` };
  return { name, label: name };
}

export const PREDICATE_OPTIONS: PredicateOption[] = [
  ...["prime", "positive", "even", "odd"].map(option),
  ...Array.from({ length: 18 }, (_, i) => option(`divisible_${i + 3}`)),
  ...Array.from({ length: 20 }, (_, i) => option(`greater_${i + 1}`)),
];

/** Sentinel for the picker; submits as "no predicate component". */
export const DONT_KNOW = "__dont_know__";

export function searchPredicates(query: string): PredicateOption[] {
  const q = query.trim().toLowerCase();
  if (!q) return PREDICATE_OPTIONS;
  return PREDICATE_OPTIONS.filter(
    (p) => p.label.includes(q) || p.name.includes(q),
  );
}
