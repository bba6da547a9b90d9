#include "sexdoc/export.hpp"
#include "sexdoc/markup.hpp"

namespace sexdoc::viewer {

std::string index_html(const std::string& title) {
  const std::string t = escape_text(title);
  return R"(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>)" + t + R"(</title>
<link rel="stylesheet" href="viewer.css">
</head>
<body>
<header>
<h1 id="title">)" + t + R"(</h1>
<input id="search" type="search" placeholder="Jump to topic or search" autocomplete="off">
<a id="download" href="download/manual.zip" hidden>Download this Manual</a>
</header>
<nav id="nav"></nav>
<main id="topic"><p>Loading...</p></main>
<script src="viewer.js"></script>
</body>
</html>
)";
}

std::string stylesheet() {
  return R"(body { margin: 0; font-family: sans-serif; display: grid; grid-template-columns: 18em 1fr;
  grid-template-rows: auto 1fr; height: 100vh; }
header { grid-column: 1 / 3; display: flex; gap: 1em; align-items: center; padding: 0.5em 1em;
  background: #234; color: #fff; }
header h1 { font-size: 1.2em; margin: 0; }
header a { color: #fff; }
#search { flex: 1; max-width: 30em; }
nav { overflow: auto; border-right: 1px solid #ccc; padding: 0.5em; font-size: 0.9em; }
nav ul { list-style: none; padding-left: 1em; margin: 0; }
main { overflow: auto; padding: 0 2em 2em; }
pre { background: #f4f4f4; padding: 0.5em; }
.origin { color: #666; font-size: 0.85em; }
.short { font-style: italic; }
.error { color: #a00; }
.expanded { border-left: 3px solid #ccd; padding-left: 1em; margin-top: 1em; }
)";
}

std::string script() {
  return R"JS((function () {
  "use strict";
  var index = null, data = null, server = false, cache = {}, byKey = {};

  function el(tag, attrs, text) {
    var e = document.createElement(tag);
    for (var k in attrs || {}) e.setAttribute(k, attrs[k]);
    if (text !== undefined) e.textContent = text;
    return e;
  }

  function getJSON(url) {
    return fetch(url).then(function (r) {
      if (!r.ok) throw new Error(url + ": " + r.status);
      return r.json();
    });
  }

  function topic(key) {
    if (cache[key]) return Promise.resolve(cache[key]);
    if (!server) return Promise.resolve(data[key] || null);
    return getJSON("api/topic/" + encodeURIComponent(key)).then(function (t) { cache[key] = t; return t; });
  }

  function convert(node, out) {
    node.childNodes.forEach(function (n) {
      if (n.nodeType === 3) { out.appendChild(document.createTextNode(n.nodeValue)); return; }
      if (n.nodeType !== 1) return;
      var tag = n.nodeName.toLowerCase(), e;
      if (tag === "see") {
        e = el("a", { href: "#!/" + n.getAttribute("topic") });
      } else if (tag === "a") {
        e = el("a", { href: n.getAttribute("href") });
      } else if (tag === "code" && n.textContent.indexOf("\n") >= 0) {
        e = el("pre");
      } else if (tag === "img" || tag === "icon") {
        e = el("img", { src: n.getAttribute("src") });
      } else if (tag === "box") {
        e = el("div", { "class": "box" });
      } else if (tag === "srclink") {
        e = el("span");
      } else {
        e = el(tag === "sf" ? "span" : tag);
      }
      convert(n, e);
      out.appendChild(e);
    });
  }

  function markup(text) {
    var out = el("div");
    var doc = new DOMParser().parseFromString("<root>" + text + "</root>", "application/xml");
    convert(doc.documentElement, out);
    return out;
  }

  function body(t, key) {
    var section = el("section");
    section.appendChild(el("h2", {}, t.name));
    section.appendChild(el("div", { "class": "origin" }, t.package + "::" + t.name + " -- " + t.origin));
    if (t.parents.length) {
      var p = el("p", {}, "Parents: ");
      t.parents.forEach(function (k, i) {
        if (i) p.appendChild(document.createTextNode(", "));
        p.appendChild(el("a", { href: "#!/" + k }, byKey[k] ? byKey[k][1] : k));
      });
      section.appendChild(p);
    }
    if (t.short_html) { var s = markup(t.short_html); s.className = "short"; section.appendChild(s); }
    if (t.long_html) section.appendChild(markup(t.long_html));
    var kids = index.tree[key] || [];
    if (kids.length) {
      section.appendChild(el("h3", {}, "Subtopics"));
      var toggle = el("button", {}, "Expand");
      section.appendChild(toggle);
      var list = el("ul");
      kids.forEach(function (k) {
        var li = el("li");
        li.appendChild(el("a", { href: "#!/" + k, title: byKey[k] ? byKey[k][2] : "" }, byKey[k] ? byKey[k][1] : k));
        list.appendChild(li);
      });
      section.appendChild(list);
      var expanded = null;
      toggle.onclick = function () {
        if (expanded) { expanded.remove(); expanded = null; toggle.textContent = "Expand"; return; }
        expanded = el("div");
        section.appendChild(expanded);
        toggle.textContent = "Collapse";
        descendants(key).reduce(function (chain, k) {
          return chain.then(function () { return topic(k); }).then(function (d) {
            if (d && expanded) { var b = body(d, k); b.className = "expanded"; expanded.appendChild(b); }
          });
        }, Promise.resolve());
      };
    }
    return section;
  }

  function descendants(key) {
    var out = [], seen = {};
    (function walk(k) {
      (index.tree[k] || []).forEach(function (c) {
        if (seen[c]) return;
        seen[c] = true;
        out.push(c);
        walk(c);
      });
    })(key);
    return out;
  }

  function show() {
    var main = document.getElementById("topic");
    var key = decodeURIComponent(location.hash.replace(/^#!\//, "")) || index.search.length && rootKey();
    topic(key).then(function (t) {
      main.innerHTML = "";
      if (!t) { main.appendChild(el("p", { "class": "error" }, "No topic named " + key + ".")); return; }
      main.appendChild(body(t, key));
    }).catch(function (e) {
      main.innerHTML = "";
      main.appendChild(el("p", { "class": "error" }, String(e)));
    });
  }

  function rootKey() {
    var children = {};
    for (var k in index.tree) index.tree[k].forEach(function (c) { children[c] = true; });
    for (var i = 0; i < index.search.length; i++) {
      if (!children[index.search[i][0]]) return index.search[i][0];
    }
    return index.search[0][0];
  }

  function search(q) {
    q = q.toLowerCase();
    if (!q) return [];
    var tiers = [[], [], [], []];
    index.search.forEach(function (e) {
      var name = e[1].toLowerCase();
      if (name === q) tiers[0].push(e);
      else if (name.indexOf(q) === 0) tiers[1].push(e);
      else if (name.indexOf(q) >= 0) tiers[2].push(e);
      else if (e[2].toLowerCase().indexOf(q) >= 0) tiers[3].push(e);
    });
    return tiers[0].concat(tiers[1], tiers[2], tiers[3]);
  }

  function nav() {
    var root = el("ul"), seen = {};
    (function walk(k, ul, depth) {
      var li = el("li");
      li.appendChild(el("a", { href: "#!/" + k }, byKey[k] ? byKey[k][1] : k));
      ul.appendChild(li);
      if (seen[k] || depth > 2) return;
      seen[k] = true;
      var kids = index.tree[k] || [];
      if (kids.length) {
        var sub = el("ul");
        li.appendChild(sub);
        kids.forEach(function (c) { walk(c, sub, depth + 1); });
      }
    })(rootKey(), root, 0);
    var n = document.getElementById("nav");
    n.innerHTML = "";
    n.appendChild(root);
  }

  function start() {
    index.search.forEach(function (e) { byKey[e[0]] = e; });
    nav();
    document.getElementById("search").addEventListener("change", function (ev) {
      var hits = search(ev.target.value);
      if (hits.length) location.hash = "#!/" + hits[0][0];
    });
    fetch("manifest.json").then(function (r) { return r.ok ? r.json() : null; }).then(function (m) {
      var listed = m && m.files.some(function (f) { return f.path === "download/manual.zip"; });
      document.getElementById("download").hidden = !listed;
    }).catch(function () {});
    window.addEventListener("hashchange", show);
    show();
  }

  getJSON("api/index").then(function (i) {
    index = i; server = true; start();
  }).catch(function () {
    return Promise.all([getJSON("xindex.json"), getJSON("xdata.json")]).then(function (r) {
      index = r[0]; data = r[1]; start();
    });
  }).catch(function (e) {
    var main = document.getElementById("topic");
    main.innerHTML = "";
    main.appendChild(el("p", { "class": "error" }, "Could not load the manual: " + e));
  });
})();
)JS";
}

}  // namespace sexdoc::viewer
