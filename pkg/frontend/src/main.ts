/**
 * Browser wiring: course picker, threshold sliders, and the live graph.
 * All state transitions go through TuningSession; this file only moves
 * values between the DOM and the session.
 */

import { ApiError, ModelServiceClient } from "./api.js";
import { renderModelView, renderSchemaProblem } from "./render.js";
import { REFERENCE_PARAMS, SLIDER_RANGES, TuningSession } from "./session.js";
import { SchemaMismatch, type CourseDocument, type RefineParams } from "./types.js";

type ParamKey = keyof RefineParams;
const PARAM_KEYS: ParamKey[] = ["s1", "s2", "s3", "alpha"];

const client = new ModelServiceClient(
  new URLSearchParams(window.location.search).get("api") ?? "",
);

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

const picker = byId<HTMLSelectElement>("course-picker");
const banner = byId<HTMLDivElement>("banner");
const bannerText = byId<HTMLSpanElement>("banner-text");
const retryButton = byId<HTMLButtonElement>("retry");
const inlineError = byId<HTMLDivElement>("inline-error");
const pendingMark = byId<HTMLSpanElement>("pending");
const view = byId<HTMLDivElement>("view");

const sliders = Object.fromEntries(
  PARAM_KEYS.map((key) => [
    key,
    {
      input: byId<HTMLInputElement>(`slider-${key}`),
      label: byId<HTMLSpanElement>(`value-${key}`),
    },
  ]),
) as Record<ParamKey, { input: HTMLInputElement; label: HTMLSpanElement }>;

let session: TuningSession | null = null;
let course: CourseDocument | null = null;

function showBanner(message: string): void {
  bannerText.textContent = message;
  banner.hidden = false;
}

function syncSliders(params: RefineParams): void {
  for (const key of PARAM_KEYS) {
    sliders[key].input.value = String(params[key]);
    sliders[key].label.textContent = String(params[key]);
  }
  clampS3();
}

/** Keep the s3 slider floor above s2 so the ordering invariant holds. */
function clampS3(): void {
  const s2 = Number(sliders.s2.input.value);
  const s3 = sliders.s3.input;
  const floor = s2 + Number(s3.step);
  s3.min = String(floor);
  if (Number(s3.value) < floor) {
    s3.value = String(floor);
    sliders.s3.label.textContent = s3.value;
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return err.problem.message;
  if (err instanceof Error) return err.message;
  return String(err);
}

function update(): void {
  if (session === null || course === null) return;
  pendingMark.hidden = !session.pending;
  const err = session.error;
  if (err instanceof SchemaMismatch) {
    inlineError.hidden = true;
    view.innerHTML = renderSchemaProblem(err);
    return;
  }
  if (err !== null && err !== undefined) {
    inlineError.textContent = describeError(err);
    inlineError.hidden = false;
  } else {
    inlineError.hidden = true;
  }
  if (session.model !== null) {
    view.innerHTML = renderModelView(session.model, course);
  }
}

async function chooseCourse(courseId: string): Promise<void> {
  if (courseId === "") return;
  try {
    course = await client.getCourse(courseId);
  } catch (err) {
    showBanner(describeError(err));
    return;
  }
  session = new TuningSession(client, courseId, REFERENCE_PARAMS);
  session.subscribe(update);
  syncSliders(session.params);
  view.innerHTML = "";
  session.refineNow();
}

async function loadCourses(): Promise<void> {
  banner.hidden = true;
  try {
    const courses = await client.listCourses();
    picker.replaceChildren(new Option("Select a course...", ""));
    for (const summary of courses) {
      picker.append(new Option(`${summary.title} (${summary.id})`, summary.id));
    }
    if (courses.length === 0) {
      view.innerHTML =
        `<p class="empty-state">No courses stored yet. Create one and upload ` +
        `grades with the CLI or the service API, then reload this page.</p>`;
    }
  } catch (err) {
    showBanner(`Cannot reach the model service: ${describeError(err)}`);
  }
}

for (const key of PARAM_KEYS) {
  const range = SLIDER_RANGES[key];
  const { input, label } = sliders[key];
  input.min = String(range.min);
  input.max = String(range.max);
  input.step = String(range.step);
  input.addEventListener("input", () => {
    if (key === "s2") clampS3();
    label.textContent = input.value;
    if (session === null) return;
    try {
      // include s3 so a clamp triggered by an s2 move reaches the session
      const change: Partial<RefineParams> = { s3: Number(sliders.s3.input.value) };
      change[key] = Number(input.value);
      session.setParameters(change);
    } catch (err) {
      // slider bounds should make this unreachable; surface it if not
      inlineError.textContent = describeError(err);
      inlineError.hidden = false;
    }
  });
}

picker.addEventListener("change", () => {
  void chooseCourse(picker.value);
});
retryButton.addEventListener("click", () => {
  void loadCourses();
});

syncSliders(REFERENCE_PARAMS);
void loadCourses();
