import { describe, expect, it } from "vitest";

import { column, CsvError, parseCsv, requireColumns } from "../src/csv.js";

const SAMPLE = [
  "epsilon,fidelity,infidelity",
  "-1.00000000000000006e-01,9.75927502247158518e-01,2.40724977528414819e-02",
  "0.00000000000000000e+00,1.00000000000000000e+00,0.00000000000000000e+00",
].join("\n");

describe("parseCsv", () => {
  it("parses header and numeric rows exactly", () => {
    const table = parseCsv("sample.csv", SAMPLE);
    expect(table.columns).toEqual(["epsilon", "fidelity", "infidelity"]);
    expect(table.rowCount).toBe(2);
    expect(column(table, "epsilon")[0]).toBe(-1.00000000000000006e-1);
    expect(column(table, "fidelity")[1]).toBe(1.0);
  });

  it("rejects an empty file", () => {
    expect(() => parseCsv("x.csv", "")).toThrow(CsvError);
  });

  it("rejects a header-only file", () => {
    expect(() => parseCsv("x.csv", "a,b")).toThrow(/no data rows/);
  });

  it("rejects ragged rows with position info", () => {
    expect(() => parseCsv("x.csv", "a,b\n1,2\n3")).toThrow(/row 2 has 1 cells/);
  });

  it("rejects non-numeric cells naming the column", () => {
    expect(() => parseCsv("x.csv", "a,b\n1,apple")).toThrow(/column "b"/);
  });

  it("names the file and column on a missing column", () => {
    const table = parseCsv("data/scan.csv", SAMPLE);
    expect(() => column(table, "gamma_rate")).toThrow(
      'data/scan.csv: missing column "gamma_rate"',
    );
    expect(() => requireColumns(table, ["epsilon", "log10_infidelity"])).toThrow(
      /missing column "log10_infidelity"/,
    );
  });
});
