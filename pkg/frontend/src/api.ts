// Thin fetch client for the solver service. A solve is submitted as a job
// and polled until it leaves the pending state.

import type { ConfigDoc, InstanceDoc, JobStatus, SolvePayload } from "./types.js";

async function asJson(response: Response) {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      if (body && body.detail) detail = `${body.detail}`;
    } catch {
      // keep the status code
    }
    throw new Error(detail);
  }
  return response.json();
}

export async function fetchRandomScenario(
  seed: number,
): Promise<{ instance: InstanceDoc; config: ConfigDoc }> {
  return asJson(await fetch(`/api/random-instance?seed=${seed}`));
}

export async function submitSolve(
  instance: InstanceDoc,
  config: ConfigDoc,
): Promise<string> {
  const response = await fetch("/api/solve", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ instance, config }),
  });
  const body = await asJson(response);
  return body.job_id;
}

export async function pollJob(
  jobId: string,
  { intervalMs = 500, timeoutMs = 600_000 } = {},
): Promise<SolvePayload> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    const response = await fetch(`/api/jobs/${jobId}`);
    if (response.status === 404) {
      throw new Error("job evicted; retry the solve");
    }
    const body = (await asJson(response)) as JobStatus;
    if (body.status === "done" && body.payload) {
      return body.payload;
    }
    if (body.status === "failed") {
      throw new Error(body.error ?? "solve failed");
    }
    await new Promise((resolve) => setTimeout(resolve, intervalMs));
  }
  throw new Error("solve timed out");
}
