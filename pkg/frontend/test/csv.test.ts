import { describe, expect, it } from "vitest";

import { CsvError, parseResultCsv, REQUIRED_COLUMNS } from "../src/csv.js";

const HEADER = REQUIRED_COLUMNS.join(",");

describe("parseResultCsv", () => {
  it("parses typed rows and keeps blank oracle fields null", () => {
    const text = `${HEADER}\nbucketing,16,1,5000,9439,1.8878,992,3748,699,4992,,\n`;
    const rows = parseResultCsv(text);
    expect(rows).toHaveLength(1);
    const row = rows[0];
    expect(row.policy).toBe("bucketing");
    expect(row.k).toBe(16);
    expect(row.costPerRequest).toBeCloseTo(1.8878, 12);
    expect(row.optCost).toBeNull();
    expect(row.ratio).toBeNull();
  });

  it("parses oracle fields when present", () => {
    const text = `${HEADER}\nlru,4,0,30,25,0.8333,1,20,5,0,20,1.25\n`;
    const row = parseResultCsv(text)[0];
    expect(row.optCost).toBe(20);
    expect(row.ratio).toBeCloseTo(1.25, 12);
  });

  it("tolerates trailing newlines and CRLF", () => {
    const text = `${HEADER}\r\nlru,4,0,30,25,0.8333,1,20,5,0,,\r\n\r\n`;
    expect(parseResultCsv(text)).toHaveLength(1);
  });

  it("rejects empty input", () => {
    expect(() => parseResultCsv("")).toThrow(CsvError);
    expect(() => parseResultCsv(`${HEADER}\n`)).toThrow(/no data rows/);
  });

  it("rejects a header with missing columns", () => {
    expect(() => parseResultCsv("policy,k\nlru,4\n")).toThrow(/missing columns/);
  });

  it("rejects rows with the wrong field count", () => {
    expect(() => parseResultCsv(`${HEADER}\nlru,4,0\n`)).toThrow(/expected 12 fields/);
  });

  it("rejects non-numeric required fields", () => {
    const text = `${HEADER}\nlru,four,0,30,25,0.8,1,20,5,0,,\n`;
    expect(() => parseResultCsv(text)).toThrow(/k is not a number/);
  });
});
