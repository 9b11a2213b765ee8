/**
 * Document shapes exchanged with the model service, plus narrow runtime
 * checks. The service owns canonical serialization and all the fuzzy
 * arithmetic; the UI only verifies what it is about to render.
 */

export type Verdict = "kept" | "reversed" | "dropped" | "insufficient_data";

export const VERDICTS: readonly Verdict[] = [
  "kept",
  "reversed",
  "dropped",
  "insufficient_data",
];

export interface RefineParams {
  s1: number;
  s2: number;
  s3: number;
  alpha: number;
}

export interface Link {
  source: string;
  target: string;
}

export interface LinkVerdict extends Link {
  cpr: number;
  rpr: number;
  support: number;
  verdict: Verdict;
}

export interface ModelDocument {
  course_id: string;
  parameters: RefineParams;
  verdicts: LinkVerdict[];
  final_links: Link[];
  diagnostics: string[];
}

export interface Concept {
  id: string;
  name: string;
}

export interface CourseDocument {
  id: string;
  title: string;
  grade_scale_max: number;
  concepts: Concept[];
  links: Link[];
}

export interface CourseSummary {
  id: string;
  title: string;
  concepts: number;
  links: number;
  has_grades: boolean;
  has_model: boolean;
}

/** A service response that does not match the documented shape. */
export class SchemaMismatch extends Error {
  constructor(
    message: string,
    readonly raw: unknown,
  ) {
    super(message);
    this.name = "SchemaMismatch";
  }
}

function fail(path: string, expected: string, raw: unknown): never {
  throw new SchemaMismatch(`${path}: expected ${expected}`, raw);
}

function asObject(value: unknown, path: string, raw: unknown): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    fail(path, "an object", raw);
  }
  return value as Record<string, unknown>;
}

function asString(value: unknown, path: string, raw: unknown): string {
  if (typeof value !== "string") fail(path, "a string", raw);
  return value;
}

function asNumber(value: unknown, path: string, raw: unknown): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    fail(path, "a finite number", raw);
  }
  return value;
}

function asBoolean(value: unknown, path: string, raw: unknown): boolean {
  if (typeof value !== "boolean") fail(path, "a boolean", raw);
  return value;
}

function asArray(value: unknown, path: string, raw: unknown): unknown[] {
  if (!Array.isArray(value)) fail(path, "an array", raw);
  return value;
}

function linkAt(value: unknown, path: string, raw: unknown): Link {
  const entry = asObject(value, path, raw);
  return {
    source: asString(entry.source, `${path}.source`, raw),
    target: asString(entry.target, `${path}.target`, raw),
  };
}

export function parseModelDocument(raw: unknown): ModelDocument {
  const doc = asObject(raw, "model", raw);
  const params = asObject(doc.parameters, "model.parameters", raw);
  const verdicts = asArray(doc.verdicts, "model.verdicts", raw).map((value, i) => {
    const path = `model.verdicts[${i}]`;
    const entry = asObject(value, path, raw);
    const verdict = asString(entry.verdict, `${path}.verdict`, raw);
    if (!(VERDICTS as readonly string[]).includes(verdict)) {
      fail(`${path}.verdict`, `one of ${VERDICTS.join(", ")}`, raw);
    }
    return {
      source: asString(entry.source, `${path}.source`, raw),
      target: asString(entry.target, `${path}.target`, raw),
      cpr: asNumber(entry.cpr, `${path}.cpr`, raw),
      rpr: asNumber(entry.rpr, `${path}.rpr`, raw),
      support: asNumber(entry.support, `${path}.support`, raw),
      verdict: verdict as Verdict,
    };
  });
  return {
    course_id: asString(doc.course_id, "model.course_id", raw),
    parameters: {
      s1: asNumber(params.s1, "model.parameters.s1", raw),
      s2: asNumber(params.s2, "model.parameters.s2", raw),
      s3: asNumber(params.s3, "model.parameters.s3", raw),
      alpha: asNumber(params.alpha, "model.parameters.alpha", raw),
    },
    verdicts,
    final_links: asArray(doc.final_links, "model.final_links", raw).map(
      (value, i) => linkAt(value, `model.final_links[${i}]`, raw),
    ),
    diagnostics: asArray(doc.diagnostics, "model.diagnostics", raw).map(
      (value, i) => asString(value, `model.diagnostics[${i}]`, raw),
    ),
  };
}

export function parseCourseDocument(raw: unknown): CourseDocument {
  const doc = asObject(raw, "course", raw);
  return {
    id: asString(doc.id, "course.id", raw),
    title: asString(doc.title, "course.title", raw),
    grade_scale_max: asNumber(doc.grade_scale_max, "course.grade_scale_max", raw),
    concepts: asArray(doc.concepts, "course.concepts", raw).map((value, i) => {
      const path = `course.concepts[${i}]`;
      const entry = asObject(value, path, raw);
      return {
        id: asString(entry.id, `${path}.id`, raw),
        name: asString(entry.name, `${path}.name`, raw),
      };
    }),
    links: asArray(doc.links, "course.links", raw).map((value, i) =>
      linkAt(value, `course.links[${i}]`, raw),
    ),
  };
}

export function parseCourseSummaries(raw: unknown): CourseSummary[] {
  return asArray(raw, "courses", raw).map((value, i) => {
    const path = `courses[${i}]`;
    const entry = asObject(value, path, raw);
    return {
      id: asString(entry.id, `${path}.id`, raw),
      title: asString(entry.title, `${path}.title`, raw),
      concepts: asNumber(entry.concepts, `${path}.concepts`, raw),
      links: asNumber(entry.links, `${path}.links`, raw),
      has_grades: asBoolean(entry.has_grades, `${path}.has_grades`, raw),
      has_model: asBoolean(entry.has_model, `${path}.has_model`, raw),
    };
  });
}
