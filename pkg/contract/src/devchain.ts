// Local dev chain + deployed registry, shared by the test suites.
import { readFileSync } from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";
import ganache, { type Server } from "ganache";
import { Contract, ContractFactory, JsonRpcProvider, NonceManager, Wallet } from "ethers";

const root = path.dirname(path.dirname(fileURLToPath(import.meta.url)));

// Funded account shared with the Python anchor client (ANCHOR_PRIVKEY).
export const DEV_PRIVKEY =
  "0x1111111111111111111111111111111111111111111111111111111111111111";

export interface DevChain {
  server: Server;
  url: string;
  provider: JsonRpcProvider;
  wallet: Wallet;
  anchor: Contract;
  address: string;
  stop(): Promise<void>;
}

export async function startDevChain(port: number): Promise<DevChain> {
  const server = ganache.server({
    logging: { quiet: true },
    wallet: {
      accounts: [{ secretKey: DEV_PRIVKEY, balance: "0x56BC75E2D63100000" }],
    },
  });
  await server.listen(port);
  const url = `http://127.0.0.1:${port}`;
  const provider = new JsonRpcProvider(url);
  const wallet = new Wallet(DEV_PRIVKEY, provider);
  // the provider caches nonce lookups briefly; track nonces locally so
  // back-to-back store transactions do not race
  const signer = new NonceManager(wallet);

  const artifact = JSON.parse(
    readFileSync(path.join(root, "artifacts", "BBcAnchor.json"), "utf8")
  );
  const factory = new ContractFactory(artifact.abi, artifact.bytecode, signer);
  const deployed = await factory.deploy();
  await deployed.waitForDeployment();
  const address = await deployed.getAddress();
  const anchor = new Contract(address, artifact.abi, signer);

  return {
    server,
    url,
    provider,
    wallet,
    anchor,
    address,
    async stop() {
      provider.destroy();
      await server.close();
    },
  };
}
