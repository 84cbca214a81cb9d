import { browserClient } from "./api.js";
import { App, type HashNav } from "./app.js";

function browserNav(): HashNav {
  return {
    get: () => window.location.hash,
    set: (hash) => {
      if (window.location.hash === hash) {
        window.dispatchEvent(new HashChangeEvent("hashchange"));
      } else {
        window.location.hash = hash;
      }
    },
    onChange: (listener) => window.addEventListener("hashchange", listener),
  };
}

const root = document.getElementById("app");
if (root) {
  void new App(root, browserClient(), browserNav()).start();
}
