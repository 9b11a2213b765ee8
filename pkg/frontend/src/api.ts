import {
  parseCourseDocument,
  parseCourseSummaries,
  parseModelDocument,
  type CourseDocument,
  type CourseSummary,
  type ModelDocument,
  type RefineParams,
} from "./types.js";

export interface ProblemDocument {
  code: string;
  message: string;
  detail: unknown;
}

/** Non-2xx response carrying the service's structured problem document. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly problem: ProblemDocument,
  ) {
    super(`${problem.code}: ${problem.message}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface UploadSummary {
  learners: number;
  concepts: number;
  absent_cells: number;
}

export class ModelServiceClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    // wrap the global so browser fetch keeps its required receiver
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchImpl(this.base + path, init);
    if (response.ok) return response;
    let problem: ProblemDocument = {
      code: "UnknownError",
      message: `HTTP ${response.status}`,
      detail: null,
    };
    try {
      const body = (await response.json()) as Partial<ProblemDocument>;
      if (typeof body.code === "string" && typeof body.message === "string") {
        problem = { code: body.code, message: body.message, detail: body.detail ?? null };
      }
    } catch {
      // non-JSON error body; keep the fallback problem
    }
    throw new ApiError(response.status, problem);
  }

  async listCourses(): Promise<CourseSummary[]> {
    const response = await this.request("/courses");
    return parseCourseSummaries(await response.json());
  }

  async getCourse(courseId: string): Promise<CourseDocument> {
    const response = await this.request(`/courses/${encodeURIComponent(courseId)}`);
    return parseCourseDocument(await response.json());
  }

  async createCourse(documentText: string): Promise<{ id: string; created: boolean }> {
    const response = await this.request("/courses", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: documentText,
    });
    return (await response.json()) as { id: string; created: boolean };
  }

  async putGrades(courseId: string, csvText: string): Promise<UploadSummary> {
    const response = await this.request(
      `/courses/${encodeURIComponent(courseId)}/grades`,
      { method: "PUT", headers: { "content-type": "text/csv" }, body: csvText },
    );
    return (await response.json()) as UploadSummary;
  }

  async refine(courseId: string, params: RefineParams): Promise<ModelDocument> {
    const response = await this.request(
      `/courses/${encodeURIComponent(courseId)}/refine`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(params),
      },
    );
    return parseModelDocument(await response.json());
  }

  async getModel(courseId: string): Promise<ModelDocument> {
    const response = await this.request(
      `/courses/${encodeURIComponent(courseId)}/model?format=json`,
    );
    return parseModelDocument(await response.json());
  }
}
