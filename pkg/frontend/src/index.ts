export * from "./schemas.js";
export * from "./client.js";
export * from "./weights.js";
export * from "./render.js";
export * from "./explorer.js";
