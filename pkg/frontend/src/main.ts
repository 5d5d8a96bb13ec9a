/**
 * Entry point. Dev setup: `vite` proxies /sessions to the Python service
 * (see vite.config.ts); the channel connects through the same proxy.
 * Optional query parameters pin the study cell, e.g. ?condition=odd_a1_b7
 * &student_type=predicate-learner&seed=7.
 */

import { SessionApi } from "./api";
import { SessionApp } from "./app";
import "./style.css";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app root");

const params = new URLSearchParams(location.search);
const createBody: { condition?: string; student_type?: string; seed?: number } = {};
const condition = params.get("condition");
const studentType = params.get("student_type");
const seed = params.get("seed");
if (condition) createBody.condition = condition;
if (studentType) createBody.student_type = studentType;
if (seed) createBody.seed = Number(seed);

new SessionApp(root, {
  api: new SessionApi(),
  channelBase: `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}`,
  createBody,
});
